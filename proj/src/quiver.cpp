#include "qss/quiver.hpp"

#include <algorithm>
#include <stdexcept>

namespace qss {

int Quiver::add_vertex(const std::string& id) {
    if (vertex_index(id) >= 0) throw std::invalid_argument("duplicate vertex id: " + id);
    vertex_ids_.push_back(id);
    in_arcs_.emplace_back();
    out_arcs_.emplace_back();
    return num_vertices() - 1;
}

int Quiver::add_arc(const std::string& id, int tail, int head) {
    if (tail < 0 || tail >= num_vertices() || head < 0 || head >= num_vertices())
        throw std::invalid_argument("arc endpoints out of range for arc " + id);
    for (const Arc& a : arcs_)
        if (a.id == id) throw std::invalid_argument("duplicate arc id: " + id);
    arcs_.push_back({id, tail, head});
    int idx = num_arcs() - 1;
    out_arcs_[tail].push_back(idx);
    in_arcs_[head].push_back(idx);
    return idx;
}

int Quiver::vertex_index(const std::string& id) const {
    for (int i = 0; i < num_vertices(); ++i)
        if (vertex_ids_[i] == id) return i;
    return -1;
}

long weight_total(const Weight& w, const DimVector& alpha) {
    long s = 0;
    for (size_t i = 0; i < w.size(); ++i) s += w[i] * alpha[i];
    return s;
}

long weight_plus_total(const Weight& w, const DimVector& alpha) {
    long s = 0;
    for (size_t i = 0; i < w.size(); ++i) s += positive_part(w[i]) * alpha[i];
    return s;
}

long weight_minus_total(const Weight& w, const DimVector& alpha) {
    long s = 0;
    for (size_t i = 0; i < w.size(); ++i) s += negative_part(w[i]) * alpha[i];
    return s;
}

std::vector<int> positive_vertices(const Weight& w) {
    std::vector<int> out;
    for (size_t i = 0; i < w.size(); ++i)
        if (w[i] > 0) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> negative_vertices(const Weight& w) {
    std::vector<int> out;
    for (size_t i = 0; i < w.size(); ++i)
        if (w[i] < 0) out.push_back(static_cast<int>(i));
    return out;
}

TopoOrder topological_order(const Quiver& q) {
    TopoOrder res;
    const int n = q.num_vertices();
    std::vector<int> indeg(n, 0);
    for (const Arc& a : q.arcs()) ++indeg[a.head];
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    std::vector<int> order;
    std::vector<int> indeg_work = indeg;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int a : q.out_arcs(v))
            if (--indeg_work[q.arc(a).head] == 0) stack.push_back(q.arc(a).head);
    }
    if (static_cast<int>(order.size()) == n) {
        res.acyclic = true;
        res.vertex_order = order;
        std::vector<int> pos(n);
        for (int i = 0; i < n; ++i) pos[order[i]] = i;
        res.arc_order.resize(q.num_arcs());
        for (int a = 0; a < q.num_arcs(); ++a) res.arc_order[a] = a;
        std::stable_sort(res.arc_order.begin(), res.arc_order.end(),
                         [&](int a, int b) { return pos[q.arc(a).tail] < pos[q.arc(b).tail]; });
        return res;
    }
    // Extract a witness cycle from the residual graph (vertices still holding
    // positive in-degree all lie on or feed cycles).
    res.acyclic = false;
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<int> parent(n, -1);
    for (int start = 0; start < n; ++start) {
        if (indeg_work[start] == 0 || state[start] != 0) continue;
        int v = start;
        while (true) {
            state[v] = 1;
            int next = -1;
            for (int a : q.out_arcs(v)) {
                int h = q.arc(a).head;
                if (indeg_work[h] == 0) continue;
                if (state[h] == 1) {
                    // Found a back arc; unwind the chain v -> ... -> h.
                    std::vector<std::string> cyc;
                    int u = v;
                    cyc.push_back(q.vertex_id(h));
                    while (u != h && u != -1) {
                        cyc.push_back(q.vertex_id(u));
                        u = parent[u];
                    }
                    std::reverse(cyc.begin() + 1, cyc.end());
                    res.cycle = cyc;
                    return res;
                }
                if (state[h] == 0) {
                    next = h;
                    break;
                }
            }
            if (next < 0) {
                state[v] = 2;
                v = parent[v];
                if (v < 0) break;
            } else {
                parent[next] = v;
                v = next;
            }
        }
    }
    return res;
}

TopoOrder require_acyclic(const Quiver& q, const char* where) {
    TopoOrder t = topological_order(q);
    if (!t.acyclic) {
        std::string msg = std::string(where) + ": quiver has a cycle:";
        for (const std::string& v : t.cycle) msg += " " + v;
        throw std::domain_error(msg);
    }
    return t;
}

}  // namespace qss
