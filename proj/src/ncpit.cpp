#include "qss/ncpit.hpp"

#include <stdexcept>
#include <string>

#include "qss/exact_matrix.hpp"

namespace qss {

void LinearForm::add(int symbol, const GaussianRational& c) {
    if (c.is_zero()) return;
    for (auto& t : terms) {
        if (t.first == symbol) {
            t.second += c;
            return;
        }
    }
    terms.emplace_back(symbol, c);
}

namespace {

ExactMatrix flatten(const ExactMatrix& m) {
    ExactMatrix col(m.rows() * m.cols(), 1);
    int k = 0;
    for (int j = 0; j < m.cols(); ++j) {
        for (int i = 0; i < m.rows(); ++i) col.at(k++, 0) = m.at(i, j);
    }
    return col;
}

long coordinate_total(const Representation& rep) {
    long n = 0;
    for (int d : rep.alpha) n += d;
    return n;
}

}  // namespace

Representation reduce_arcs(const Representation& rep) {
    require_valid(rep, "reduce_arcs");
    int n = rep.quiver.num_vertices();

    Representation out;
    for (int v = 0; v < n; ++v) out.quiver.add_vertex(rep.quiver.vertex_id(v));
    out.alpha = rep.alpha;

    std::vector<ExactMatrix> span(static_cast<size_t>(n) * n);
    for (int a = 0; a < rep.quiver.num_arcs(); ++a) {
        const Arc& arc = rep.quiver.arc(a);
        const ExactMatrix& m = rep.mat(a);
        if (m.is_zero()) continue;
        ExactMatrix flat = flatten(m);
        ExactMatrix& basis = span[static_cast<size_t>(arc.tail) * n + arc.head];
        if (basis.rows() == 0) basis = ExactMatrix(flat.rows(), 0);
        if (span_contains(basis, flat)) continue;
        basis = hstack(basis, flat);
        out.quiver.add_arc(arc.id, arc.tail, arc.head);
        out.mats.push_back(m);
    }
    return out;
}

std::vector<std::vector<LinearForm>> symbolic_adjacency(const Representation& rep) {
    require_valid(rep, "symbolic_adjacency");
    int nv = rep.quiver.num_vertices();
    std::vector<int> offset(nv + 1, 0);
    for (int v = 0; v < nv; ++v) offset[v + 1] = offset[v] + rep.alpha[v];

    int n = offset[nv];
    std::vector<std::vector<LinearForm>> entry(n, std::vector<LinearForm>(n));
    for (int a = 0; a < rep.quiver.num_arcs(); ++a) {
        const Arc& arc = rep.quiver.arc(a);
        const ExactMatrix& m = rep.mat(a);
        for (int r = 0; r < m.rows(); ++r) {
            for (int c = 0; c < m.cols(); ++c) {
                entry[offset[arc.head] + r][offset[arc.tail] + c].add(a + 1, m.at(r, c));
            }
        }
    }
    return entry;
}

ABP build_abp_for_trace_power(const Representation& rep, long k) {
    require_valid(rep, "build_abp_for_trace_power");
    long total = coordinate_total(rep);
    if (k < 1 || k > total * total) {
        throw std::out_of_range("build_abp_for_trace_power: k must lie in [1, alpha(Q0)^2]");
    }
    auto adj = symbolic_adjacency(rep);
    int n = static_cast<int>(total);

    ABP abp;
    abp.num_symbols = rep.quiver.num_arcs() + 1;
    auto add_layer = [&abp](int count) {
        std::vector<int> layer(count);
        for (int& v : layer) v = abp.num_vertices++;
        abp.layers.push_back(layer);
        return layer;
    };
    auto add_arc = [&abp](int from, int to, const LinearForm& label) {
        if (label.empty()) return;
        abp.arcs.push_back({from, to, label});
    };

    std::vector<int> src = add_layer(1);
    if (k == 1) {
        std::vector<int> snk = add_layer(1);
        LinearForm trace;
        for (int p = 0; p < n; ++p) {
            for (const auto& t : adj[p][p].terms) trace.add(t.first, t.second);
        }
        add_arc(src[0], snk[0], trace);
        return abp;
    }

    // v_{l,p,q} computes (A^l)_{pq}; the final multiplication is folded into
    // the sink arcs, which tie the column back to the starting row p.
    std::vector<int> prev = add_layer(n * n);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) add_arc(src[0], prev[p * n + q], adj[p][q]);
    }
    for (long l = 2; l <= k - 1; ++l) {
        std::vector<int> cur = add_layer(n * n);
        for (int p = 0; p < n; ++p) {
            for (int r = 0; r < n; ++r) {
                for (int q = 0; q < n; ++q) add_arc(prev[p * n + r], cur[p * n + q], adj[r][q]);
            }
        }
        prev = cur;
    }
    std::vector<int> snk = add_layer(1);
    for (int p = 0; p < n; ++p) {
        for (int r = 0; r < n; ++r) add_arc(prev[p * n + r], snk[0], adj[r][p]);
    }
    return abp;
}

ABP build_aggregate_abp(const Representation& rep) {
    require_valid(rep, "build_aggregate_abp");
    int n = static_cast<int>(coordinate_total(rep));

    ABP abp;
    abp.num_symbols = rep.quiver.num_arcs() + 1;
    auto add_layer = [&abp](int count) {
        std::vector<int> layer(count);
        for (int& v : layer) v = abp.num_vertices++;
        abp.layers.push_back(layer);
        return layer;
    };
    auto add_arc = [&abp](int from, int to, const LinearForm& label) {
        if (label.empty()) return;
        abp.arcs.push_back({from, to, label});
    };
    LinearForm one;
    one.add(0, GaussianRational(1));

    std::vector<int> src = add_layer(1);
    if (n == 0) {
        add_layer(1);
        return abp;
    }
    auto adj = symbolic_adjacency(rep);
    long kmax = static_cast<long>(n) * n;

    // Layer l holds v_{l,p,q} = (A^l)_{pq} at slots p*n+q; layers 2..kmax carry
    // one extra aggregator slot computing tr A^{l-1} + ... + tr A^1.
    std::vector<int> prev = add_layer(n * n);
    for (int p = 0; p < n; ++p) add_arc(src[0], prev[p * n + p], one);
    int prev_star = -1;
    for (long l = 1; l <= kmax; ++l) {
        std::vector<int> cur = add_layer(l >= 2 ? n * n + 1 : n * n);
        for (int p = 0; p < n; ++p) {
            for (int r = 0; r < n; ++r) {
                for (int q = 0; q < n; ++q) add_arc(prev[p * n + r], cur[p * n + q], adj[r][q]);
            }
        }
        if (l >= 2) {
            int star = cur[n * n];
            for (int p = 0; p < n; ++p) add_arc(prev[p * n + p], star, one);
            if (prev_star >= 0) add_arc(prev_star, star, one);
            prev_star = star;
        }
        prev = cur;
    }
    std::vector<int> snk = add_layer(1);
    for (int p = 0; p < n; ++p) add_arc(prev[p * n + p], snk[0], one);
    if (prev_star >= 0) add_arc(prev_star, snk[0], one);
    return abp;
}

bool abp_is_zero(const ABP& abp) {
    int d = static_cast<int>(abp.layers.size());
    if (d < 2) throw std::invalid_argument("abp_is_zero: need at least source and sink layers");
    if (abp.layers.front().size() != 1 || abp.layers.back().size() != 1) {
        throw std::invalid_argument("abp_is_zero: first and last layers must be singletons");
    }

    std::vector<int> layer_of(abp.num_vertices, -1), pos_of(abp.num_vertices, -1);
    for (int l = 0; l < d; ++l) {
        for (size_t i = 0; i < abp.layers[l].size(); ++i) {
            int v = abp.layers[l][i];
            if (v < 0 || v >= abp.num_vertices || layer_of[v] != -1) {
                throw std::invalid_argument("abp_is_zero: layers must partition the vertex set");
            }
            layer_of[v] = l;
            pos_of[v] = static_cast<int>(i);
        }
    }
    std::vector<std::vector<const ABPArc*>> by_layer(d - 1);
    for (const ABPArc& a : abp.arcs) {
        if (a.from < 0 || a.from >= abp.num_vertices || a.to < 0 || a.to >= abp.num_vertices ||
            layer_of[a.from] < 0 || layer_of[a.to] != layer_of[a.from] + 1) {
            throw std::invalid_argument("abp_is_zero: arcs must join consecutive layers");
        }
        for (const auto& t : a.label.terms) {
            if (t.first < 0 || t.first >= abp.num_symbols) {
                throw std::invalid_argument("abp_is_zero: label symbol out of range");
            }
        }
        by_layer[layer_of[a.from]].push_back(&a);
    }

    // W's columns span the coefficient vectors, over the current layer's
    // vertices, of the monomials computed so far.
    ExactMatrix w = ExactMatrix::identity(1);
    for (int l = 0; l + 1 < d; ++l) {
        int rows_next = static_cast<int>(abp.layers[l + 1].size());
        ExactMatrix cand(rows_next, 0);
        if (w.cols() > 0) {
            std::vector<ExactMatrix> per_symbol(abp.num_symbols);
            std::vector<bool> used(abp.num_symbols, false);
            for (const ABPArc* a : by_layer[l]) {
                int u = pos_of[a->from], v = pos_of[a->to];
                for (const auto& t : a->label.terms) {
                    if (!used[t.first]) {
                        per_symbol[t.first] = ExactMatrix(rows_next, w.cols());
                        used[t.first] = true;
                    }
                    for (int c = 0; c < w.cols(); ++c) {
                        per_symbol[t.first].at(v, c) += t.second * w.at(u, c);
                    }
                }
            }
            for (int s = 0; s < abp.num_symbols; ++s) {
                if (used[s]) cand = hstack(cand, per_symbol[s]);
            }
        }
        w = column_span_basis(cand);
    }
    return w.cols() == 0;
}

bool decide_gl_semistable(const Representation& rep) {
    require_valid(rep, "decide_gl_semistable");
    Representation red = reduce_arcs(rep);
    long n = coordinate_total(red);
    if (n == 0) return false;
    // No closed walks at all: every trace power vanishes identically.
    if (topological_order(red.quiver).acyclic) return false;
    for (long k = 1; k <= n * n; ++k) {
        if (!abp_is_zero(build_abp_for_trace_power(red, k))) return true;
    }
    return false;
}

}  // namespace qss
