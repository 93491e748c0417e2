#include "qss/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace qss {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("instance: " + msg); }

const json& field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(std::string("missing field '") + key + "'");
    return *it;
}

std::string int_string(const json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    fail(std::string(what) + " must be an integer string");
}

GaussianRational parse_entry(const json& e) {
    if (!e.is_array() || e.size() != 4) fail("matrix entries must be [re_num, re_den, im_num, im_den]");
    return {rational_from_strings(int_string(e[0], "re_num"), int_string(e[1], "re_den")),
            rational_from_strings(int_string(e[2], "im_num"), int_string(e[3], "im_den"))};
}

Weight parse_weight(const json& obj, const Quiver& q, const char* key) {
    if (!obj.is_object()) fail(std::string("'") + key + "' must be an object keyed by vertex id");
    Weight w(q.num_vertices(), 0);
    std::unordered_set<std::string> seen;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        int v = q.vertex_index(it.key());
        if (v < 0) fail(std::string("'") + key + "' references unknown vertex '" + it.key() + "'");
        if (!it.value().is_number_integer()) fail(std::string("'") + key + "' entries must be integers");
        w[v] = it.value().get<long>();
        seen.insert(it.key());
    }
    if (static_cast<int>(seen.size()) != q.num_vertices()) {
        fail(std::string("'") + key + "' must cover every vertex");
    }
    return w;
}

json weight_to_json(const Quiver& q, const Weight& w) {
    json out = json::object();
    for (int v = 0; v < q.num_vertices(); ++v) out[q.vertex_id(v)] = w[v];
    return out;
}

json rational_strings(const Rational& r) {
    return json{r.get_num().get_str(), r.get_den().get_str()};
}

}  // namespace

Instance parse_instance_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("top level must be an object");

    Instance inst;
    Quiver& q = inst.rep.quiver;

    const json& verts = field(doc, "vertices");
    if (!verts.is_array() || verts.empty()) fail("'vertices' must be a nonempty array");
    for (const json& v : verts) {
        if (!v.is_string()) fail("vertex ids must be strings");
        if (q.vertex_index(v.get<std::string>()) >= 0) fail("duplicate vertex id '" + v.get<std::string>() + "'");
        q.add_vertex(v.get<std::string>());
    }

    const json& arcs = field(doc, "arcs");
    if (!arcs.is_array()) fail("'arcs' must be an array");
    std::unordered_set<std::string> arc_ids;
    for (const json& a : arcs) {
        if (!a.is_object()) fail("each arc must be an object");
        std::string id = field(a, "id").get<std::string>();
        if (!arc_ids.insert(id).second) fail("duplicate arc id '" + id + "'");
        int tail = q.vertex_index(field(a, "tail").get<std::string>());
        int head = q.vertex_index(field(a, "head").get<std::string>());
        if (tail < 0 || head < 0) fail("arc '" + id + "' references an unknown vertex");
        q.add_arc(id, tail, head);
    }

    const json& alpha = field(doc, "alpha");
    inst.rep.alpha.assign(q.num_vertices(), 0);
    {
        std::unordered_set<std::string> seen;
        for (auto it = alpha.begin(); it != alpha.end(); ++it) {
            int v = q.vertex_index(it.key());
            if (v < 0) fail("'alpha' references unknown vertex '" + it.key() + "'");
            if (!it.value().is_number_integer() || it.value().get<long>() < 0) {
                fail("'alpha' entries must be nonnegative integers");
            }
            inst.rep.alpha[v] = it.value().get<int>();
            seen.insert(it.key());
        }
        if (static_cast<int>(seen.size()) != q.num_vertices()) fail("'alpha' must cover every vertex");
    }

    const json& mats = field(doc, "matrices");
    if (!mats.is_object()) fail("'matrices' must be an object keyed by arc id");
    for (auto it = mats.begin(); it != mats.end(); ++it) {
        if (!arc_ids.count(it.key())) fail("'matrices' references unknown arc '" + it.key() + "'");
    }
    inst.rep.mats.reserve(q.num_arcs());
    for (int a = 0; a < q.num_arcs(); ++a) {
        const Arc& arc = q.arc(a);
        auto it = mats.find(arc.id);
        if (it == mats.end()) fail("missing matrix for arc '" + arc.id + "'");
        int rows = inst.rep.alpha[arc.head], cols = inst.rep.alpha[arc.tail];
        const json& m = *it;
        if (!m.is_array() || static_cast<int>(m.size()) != rows) {
            fail("matrix for arc '" + arc.id + "' must have " + std::to_string(rows) + " rows");
        }
        ExactMatrix em(rows, cols);
        for (int r = 0; r < rows; ++r) {
            const json& row = m[r];
            if (!row.is_array() || static_cast<int>(row.size()) != cols) {
                fail("matrix for arc '" + arc.id + "' must have " + std::to_string(cols) + " columns");
            }
            for (int c = 0; c < cols; ++c) em.at(r, c) = parse_entry(row[c]);
        }
        inst.rep.mats.push_back(std::move(em));
    }

    if (doc.contains("sigma")) inst.sigma = parse_weight(doc["sigma"], q, "sigma");
    if (doc.contains("tau")) inst.tau = parse_weight(doc["tau"], q, "tau");
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) fail("cannot open '" + path + "'");
        buf << in.rdbuf();
    }
    return parse_instance_text(buf.str());
}

std::string serialize_instance(const Instance& inst) {
    const Quiver& q = inst.rep.quiver;
    json doc = json::object();

    doc["vertices"] = json::array();
    for (int v = 0; v < q.num_vertices(); ++v) doc["vertices"].push_back(q.vertex_id(v));

    doc["arcs"] = json::array();
    for (int a = 0; a < q.num_arcs(); ++a) {
        const Arc& arc = q.arc(a);
        doc["arcs"].push_back(
            {{"id", arc.id}, {"tail", q.vertex_id(arc.tail)}, {"head", q.vertex_id(arc.head)}});
    }

    doc["alpha"] = json::object();
    for (int v = 0; v < q.num_vertices(); ++v) doc["alpha"][q.vertex_id(v)] = inst.rep.alpha[v];

    doc["matrices"] = json::object();
    for (int a = 0; a < q.num_arcs(); ++a) {
        const ExactMatrix& m = inst.rep.mats[a];
        json rows = json::array();
        for (int r = 0; r < m.rows(); ++r) {
            json row = json::array();
            for (int c = 0; c < m.cols(); ++c) {
                const GaussianRational& e = m.at(r, c);
                json re = rational_strings(e.re), im = rational_strings(e.im);
                row.push_back(json{re[0], re[1], im[0], im[1]});
            }
            rows.push_back(std::move(row));
        }
        doc["matrices"][q.arc(a).id] = std::move(rows);
    }

    if (inst.sigma) doc["sigma"] = weight_to_json(q, *inst.sigma);
    if (inst.tau) doc["tau"] = weight_to_json(q, *inst.tau);
    return doc.dump(2) + "\n";
}

}  // namespace qss
