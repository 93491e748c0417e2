#include "qss/subrep.hpp"

#include <stdexcept>

namespace qss {

long Subrep::total_dim() const {
    long s = 0;
    for (const ExactMatrix& b : basis) s += b.cols();
    return s;
}

Subrep zero_subrep(const Representation& rep) {
    Subrep w;
    for (int v = 0; v < rep.quiver.num_vertices(); ++v)
        w.basis.emplace_back(rep.alpha[v], 0);
    return w;
}

Subrep full_subrep(const Representation& rep) {
    Subrep w;
    for (int v = 0; v < rep.quiver.num_vertices(); ++v)
        w.basis.push_back(ExactMatrix::identity(rep.alpha[v]));
    return w;
}

DimVector subrep_dims(const Subrep& w) {
    DimVector d;
    d.reserve(w.basis.size());
    for (const ExactMatrix& b : w.basis) d.push_back(b.cols());
    return d;
}

Subrep canonicalize(const Representation& rep, const Subrep& w) {
    if (w.basis.size() != static_cast<size_t>(rep.quiver.num_vertices()))
        throw std::invalid_argument("canonicalize: block count mismatch");
    Subrep out;
    out.basis.reserve(w.basis.size());
    for (size_t v = 0; v < w.basis.size(); ++v) {
        if (w.basis[v].rows() != rep.alpha[v])
            throw std::invalid_argument("canonicalize: ambient dimension mismatch at vertex " +
                                        rep.quiver.vertex_id(static_cast<int>(v)));
        out.basis.push_back(column_span_basis(w.basis[v]));
    }
    return out;
}

bool subrep_equal(const Subrep& a, const Subrep& b) {
    if (a.basis.size() != b.basis.size()) return false;
    for (size_t v = 0; v < a.basis.size(); ++v)
        if (!(a.basis[v] == b.basis[v])) return false;
    return true;
}

bool subrep_contains(const Subrep& outer, const Subrep& inner) {
    if (outer.basis.size() != inner.basis.size()) return false;
    for (size_t v = 0; v < outer.basis.size(); ++v)
        if (!span_contains(outer.basis[v], inner.basis[v])) return false;
    return true;
}

bool is_subrepresentation(const Representation& rep, const Subrep& w) {
    if (w.basis.size() != static_cast<size_t>(rep.quiver.num_vertices())) return false;
    for (size_t v = 0; v < w.basis.size(); ++v)
        if (w.basis[v].rows() != rep.alpha[v]) return false;
    for (int a = 0; a < rep.quiver.num_arcs(); ++a) {
        const Arc& arc = rep.quiver.arc(a);
        ExactMatrix image = rep.mat(a) * w.basis[arc.tail];
        if (!span_contains(w.basis[arc.head], image)) return false;
    }
    return true;
}

Subrep closure_subrepresentation(const Representation& rep, const Subrep& seeds) {
    TopoOrder topo = require_acyclic(rep.quiver, "closure_subrepresentation");
    Subrep w;
    w.basis.resize(rep.quiver.num_vertices());
    for (int v : topo.vertex_order) {
        ExactMatrix acc = seeds.basis[v];
        if (acc.rows() != rep.alpha[v])
            throw std::invalid_argument("closure seeds: ambient mismatch at vertex " +
                                        rep.quiver.vertex_id(v));
        for (int a : rep.quiver.in_arcs(v)) {
            const Arc& arc = rep.quiver.arc(a);
            acc = hstack(acc, rep.mat(a) * w.basis[arc.tail]);
        }
        w.basis[v] = column_span_basis(acc);
    }
    return w;
}

Subrep co_closure_subrepresentation(const Representation& rep,
                                    const std::vector<std::optional<ExactMatrix>>& bounds) {
    TopoOrder topo = require_acyclic(rep.quiver, "co_closure_subrepresentation");
    Subrep w;
    w.basis.resize(rep.quiver.num_vertices());
    for (auto it = topo.vertex_order.rbegin(); it != topo.vertex_order.rend(); ++it) {
        int v = *it;
        // W(v) = bound(v) cap the preimages of W(head) under every out-arc.
        // Stack the annihilator conditions into one kernel computation.
        ExactMatrix constraints(0, rep.alpha[v]);
        if (bounds[v]) {
            const ExactMatrix& b = *bounds[v];
            if (b.rows() != rep.alpha[v])
                throw std::invalid_argument("co_closure bounds: ambient mismatch at vertex " +
                                            rep.quiver.vertex_id(v));
            constraints = vstack(constraints, left_annihilator(b));
        }
        for (int a : rep.quiver.out_arcs(v)) {
            const Arc& arc = rep.quiver.arc(a);
            constraints = vstack(constraints, left_annihilator(w.basis[arc.head]) * rep.mat(a));
        }
        w.basis[v] = column_span_basis(exact_kernel(constraints));
    }
    return w;
}

long king_value(const Weight& sigma, const Subrep& w) {
    long s = 0;
    for (size_t v = 0; v < w.basis.size(); ++v) s += sigma[v] * w.basis[v].cols();
    return s;
}

Subrep subrep_sum(const Representation& rep, const Subrep& a, const Subrep& b) {
    Subrep out;
    out.basis.reserve(a.basis.size());
    for (size_t v = 0; v < a.basis.size(); ++v) out.basis.push_back(span_sum(a.basis[v], b.basis[v]));
    (void)rep;
    return out;
}

Subrep subrep_intersection(const Representation& rep, const Subrep& a, const Subrep& b) {
    Subrep out;
    out.basis.reserve(a.basis.size());
    for (size_t v = 0; v < a.basis.size(); ++v)
        out.basis.push_back(span_intersection(a.basis[v], b.basis[v]));
    (void)rep;
    return out;
}

}  // namespace qss
