#include "qss/representation.hpp"

#include <stdexcept>

namespace qss {

long Representation::total_dim() const {
    long s = 0;
    for (int d : alpha) s += d;
    return s;
}

ValidationReport validate(const Representation& rep) {
    ValidationReport rpt;
    const int n = rep.quiver.num_vertices();
    if (static_cast<int>(rep.alpha.size()) != n) {
        rpt.errors.push_back("alpha has " + std::to_string(rep.alpha.size()) +
                             " entries for " + std::to_string(n) + " vertices");
    } else {
        for (int v = 0; v < n; ++v)
            if (rep.alpha[v] < 0)
                rpt.errors.push_back("alpha(" + rep.quiver.vertex_id(v) + ") is negative");
    }
    if (rep.mats.size() != static_cast<size_t>(rep.quiver.num_arcs())) {
        rpt.errors.push_back("matrix count " + std::to_string(rep.mats.size()) +
                             " does not match arc count " + std::to_string(rep.quiver.num_arcs()));
    } else if (static_cast<int>(rep.alpha.size()) == n) {
        for (int a = 0; a < rep.quiver.num_arcs(); ++a) {
            const Arc& arc = rep.quiver.arc(a);
            if (rep.mats[a].rows() != rep.alpha[arc.head] || rep.mats[a].cols() != rep.alpha[arc.tail])
                rpt.errors.push_back("matrix for arc " + arc.id + " has shape " +
                                     std::to_string(rep.mats[a].rows()) + "x" +
                                     std::to_string(rep.mats[a].cols()) + ", expected " +
                                     std::to_string(rep.alpha[arc.head]) + "x" +
                                     std::to_string(rep.alpha[arc.tail]));
        }
    }
    rpt.acyclic = topological_order(rep.quiver).acyclic;
    rpt.ok = rpt.errors.empty();
    return rpt;
}

void require_valid(const Representation& rep, const char* where) {
    ValidationReport rpt = validate(rep);
    if (!rpt.ok) throw std::invalid_argument(std::string(where) + ": " + rpt.errors.front());
}

FloatRep to_float(const Representation& rep) {
    FloatRep f;
    f.mats.reserve(rep.mats.size());
    for (const ExactMatrix& m : rep.mats) f.mats.push_back(from_exact(m));
    return f;
}

}  // namespace qss
