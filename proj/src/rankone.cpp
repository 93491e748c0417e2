#include "qss/rankone.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace qss {

namespace {

GaussianRational dot_row_col(const ExactMatrix& row, const ExactMatrix& col) {
    GaussianRational s;
    for (int j = 0; j < row.cols(); ++j) s = s + row.at(0, j) * col.at(j, 0);
    return s;
}

}  // namespace

bool is_rank_one(const Representation& rep) {
    for (int a = 0; a < rep.quiver.num_arcs(); ++a)
        if (exact_rank(rep.mat(a)) != 1) return false;
    return true;
}

RankOneRep factorize_rank_one(const Representation& rep) {
    require_valid(rep, "factorize_rank_one");
    RankOneRep out;
    out.rep = &rep;
    out.arcs.reserve(rep.quiver.num_arcs());
    for (int a = 0; a < rep.quiver.num_arcs(); ++a) {
        const ExactMatrix& m = rep.mat(a);
        int r0 = -1, c0 = -1;
        for (int r = 0; r < m.rows() && r0 < 0; ++r)
            for (int c = 0; c < m.cols(); ++c)
                if (!m.at(r, c).is_zero()) {
                    r0 = r;
                    c0 = c;
                    break;
                }
        if (r0 < 0)
            throw std::domain_error("factorize_rank_one: arc '" + rep.quiver.arc(a).id +
                                    "' has a zero matrix (rank 0)");
        RankOneArc ra;
        ra.arc = a;
        ra.v = ExactMatrix(m.rows(), 1);
        for (int r = 0; r < m.rows(); ++r) ra.v.at(r, 0) = m.at(r, c0);
        ra.f = ExactMatrix(1, m.cols());
        GaussianRational pivot = m.at(r0, c0);
        for (int c = 0; c < m.cols(); ++c) ra.f.at(0, c) = m.at(r0, c) / pivot;
        if (!(ra.v * ra.f == m))
            throw std::domain_error("factorize_rank_one: arc '" + rep.quiver.arc(a).id +
                                    "' has rank greater than one");
        out.arcs.push_back(std::move(ra));
    }
    return out;
}

DVGraph build_dv_graph(const RankOneRep& r1) {
    const Quiver& q = r1.rep->quiver;
    const int m = q.num_arcs();
    DVGraph dv;
    dv.num_nodes = 2 * m;
    dv.succ.assign(dv.num_nodes, {});
    dv.node_arc.resize(dv.num_nodes);
    dv.node_vertex.resize(dv.num_nodes);
    dv.node_is_f.resize(dv.num_nodes);
    for (int k = 0; k < m; ++k) {
        dv.node_arc[2 * k] = k;
        dv.node_arc[2 * k + 1] = k;
        dv.node_vertex[2 * k] = q.arc(k).tail;
        dv.node_vertex[2 * k + 1] = q.arc(k).head;
        dv.node_is_f[2 * k] = 1;
        dv.node_is_f[2 * k + 1] = 0;
        dv.succ[2 * k].push_back(2 * k + 1);
    }
    for (int a = 0; a < m; ++a)
        for (int b : q.out_arcs(q.arc(a).head))
            if (!dot_row_col(r1.arcs[b].f, r1.arcs[a].v).is_zero())
                dv.succ[2 * a + 1].push_back(2 * b);
    return dv;
}

void enumerate_lower_sets(const std::vector<std::vector<int>>& succ, int limit,
                          const std::function<void(const std::vector<char>&)>& visit) {
    const int n = static_cast<int>(succ.size());
    if (n > limit || n > 62)
        throw std::domain_error("enumerate_lower_sets: ground set of " + std::to_string(n) +
                                " nodes exceeds the enumeration limit of " +
                                std::to_string(std::min(limit, 62)));
    // Successor closure of each node, self included.
    std::vector<std::uint64_t> closure(n, 0);
    for (int v = 0; v < n; ++v) {
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (closure[v] >> u & 1) continue;
            closure[v] |= std::uint64_t(1) << u;
            for (int w : succ[u]) stack.push_back(w);
        }
    }
    // Every lower set is a union of node closures, so growing one closure at a
    // time reaches them all.
    std::unordered_set<std::uint64_t> seen{0};
    std::deque<std::uint64_t> queue{0};
    std::vector<char> ind(n);
    while (!queue.empty()) {
        std::uint64_t mask = queue.front();
        queue.pop_front();
        for (int v = 0; v < n; ++v) ind[v] = (mask >> v & 1) != 0;
        visit(ind);
        for (int v = 0; v < n; ++v) {
            if (mask >> v & 1) continue;
            std::uint64_t next = mask | closure[v];
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
}

LinearMatroid::LinearMatroid(int ambient, std::vector<ExactMatrix> ground)
    : ambient_(ambient), ground_(std::move(ground)) {
    for (const ExactMatrix& g : ground_)
        if (g.rows() != ambient_ || g.cols() != 1)
            throw std::invalid_argument("LinearMatroid: ground vectors must be ambient x 1");
}

int LinearMatroid::rank(const std::vector<int>& subset) const {
    std::uint64_t mask = 0;
    for (int idx : subset) {
        if (idx < 0 || idx >= size())
            throw std::out_of_range("LinearMatroid::rank: index out of range");
        mask |= std::uint64_t(1) << idx;
    }
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    ExactMatrix stacked(ambient_, 0);
    for (int idx = 0; idx < size(); ++idx)
        if (mask >> idx & 1) stacked = hstack(stacked, ground_[idx]);
    int r = exact_rank(stacked);
    cache_.emplace(mask, r);
    return r;
}

int matroid_rank(const LinearMatroid& m, const std::vector<int>& subset) {
    return m.rank(subset);
}

VertexMatroids build_vertex_matroids(const RankOneRep& r1) {
    const Quiver& q = r1.rep->quiver;
    const int n = q.num_vertices();
    VertexMatroids vm;
    vm.out_nodes.assign(n, {});
    vm.in_nodes.assign(n, {});
    std::vector<std::vector<ExactMatrix>> out_ground(n), in_ground(n);
    for (int k = 0; k < q.num_arcs(); ++k) {
        const Arc& arc = q.arc(k);
        out_ground[arc.tail].push_back(r1.arcs[k].f.transpose());
        vm.out_nodes[arc.tail].push_back(2 * k);
        in_ground[arc.head].push_back(r1.arcs[k].v);
        vm.in_nodes[arc.head].push_back(2 * k + 1);
    }
    vm.out_functionals.reserve(n);
    vm.in_vectors.reserve(n);
    for (int v = 0; v < n; ++v) {
        vm.out_functionals.emplace_back(r1.rep->alpha[v], std::move(out_ground[v]));
        vm.in_vectors.emplace_back(r1.rep->alpha[v], std::move(in_ground[v]));
    }
    return vm;
}

K1FResult check_k1_f(const RankOneRep& r1, const Weight& sigma) {
    const Representation& rep = *r1.rep;
    K1FResult out;
    out.sigma_total = weight_plus_total(sigma, rep.alpha);
    out.k1 = out.sigma_total == weight_minus_total(sigma, rep.alpha);
    VertexMatroids vm = build_vertex_matroids(r1);
    out.full_rank = true;
    for (int v = 0; v < rep.quiver.num_vertices(); ++v) {
        std::vector<int> all;
        if (sigma[v] > 0) {
            all.resize(vm.out_functionals[v].size());
            for (size_t j = 0; j < all.size(); ++j) all[j] = static_cast<int>(j);
            if (vm.out_functionals[v].rank(all) != rep.alpha[v]) out.full_rank = false;
        } else if (sigma[v] < 0) {
            all.resize(vm.in_vectors[v].size());
            for (size_t j = 0; j < all.size(); ++j) all[j] = static_cast<int>(j);
            if (vm.in_vectors[v].rank(all) != rep.alpha[v]) out.full_rank = false;
        }
    }
    return out;
}

long k2_lhs(const RankOneRep& r1, const Weight& sigma, const VertexMatroids& vm,
            const std::vector<char>& in_x) {
    const Representation& rep = *r1.rep;
    long total = 0;
    for (int v = 0; v < rep.quiver.num_vertices(); ++v) {
        if (sigma[v] > 0) {
            std::vector<int> outside;
            for (size_t j = 0; j < vm.out_nodes[v].size(); ++j)
                if (!in_x[vm.out_nodes[v][j]]) outside.push_back(static_cast<int>(j));
            total += sigma[v] * vm.out_functionals[v].rank(outside);
        } else if (sigma[v] < 0) {
            std::vector<int> inside;
            for (size_t j = 0; j < vm.in_nodes[v].size(); ++j)
                if (in_x[vm.in_nodes[v][j]]) inside.push_back(static_cast<int>(j));
            total += -sigma[v] * vm.in_vectors[v].rank(inside);
        }
    }
    return total;
}

K2Result check_k2(const RankOneRep& r1, const Weight& sigma, int lowerset_limit) {
    DVGraph dv = build_dv_graph(r1);
    VertexMatroids vm = build_vertex_matroids(r1);
    long target = weight_plus_total(sigma, r1.rep->alpha);
    K2Result out;
    long best = target;  // anything below this is a violation
    enumerate_lower_sets(dv.succ, lowerset_limit, [&](const std::vector<char>& x) {
        long lhs = k2_lhs(r1, sigma, vm, x);
        if (lhs < best) {
            best = lhs;
            out.witness = x;
        }
    });
    out.holds = !out.witness.has_value();
    return out;
}

bool decide_rank_one_ss(const RankOneRep& r1, const Weight& sigma, int lowerset_limit) {
    if (static_cast<int>(sigma.size()) != r1.rep->quiver.num_vertices())
        throw std::invalid_argument("decide_rank_one_ss: weight length mismatch");
    K1FResult kf = check_k1_f(r1, sigma);
    if (!kf.k1 || !kf.full_rank) return false;
    return check_k2(r1, sigma, lowerset_limit).holds;
}

SubflowInstance make_subflow_instance(const RankOneRep& r1, const Weight& sigma) {
    SubflowInstance inst;
    inst.graph = build_dv_graph(r1);
    inst.sigma_total = weight_plus_total(sigma, r1.rep->alpha);
    VertexMatroids vm = build_vertex_matroids(r1);
    const Representation& rep = *r1.rep;
    const int n = rep.quiver.num_vertices();
    long total = inst.sigma_total;
    Weight sig = sigma;
    inst.f = [vm, sig, n, total](const std::vector<char>& z) {
        long acc = -total;
        for (int v = 0; v < n; ++v) {
            if (sig[v] > 0) {
                std::vector<int> inside;
                for (size_t j = 0; j < vm.out_nodes[v].size(); ++j)
                    if (z[vm.out_nodes[v][j]]) inside.push_back(static_cast<int>(j));
                acc += sig[v] * vm.out_functionals[v].rank(inside);
            } else if (sig[v] < 0) {
                std::vector<int> outside;
                for (size_t j = 0; j < vm.in_nodes[v].size(); ++j)
                    if (!z[vm.in_nodes[v][j]]) outside.push_back(static_cast<int>(j));
                acc += -sig[v] * vm.in_vectors[v].rank(outside);
            }
        }
        return acc;
    };
    return inst;
}

SubflowResult submodular_flow_feasible(const SubflowInstance& inst, int lowerset_limit) {
    SubflowResult out;
    std::vector<char> complement(inst.graph.num_nodes);
    enumerate_lower_sets(inst.graph.succ, lowerset_limit, [&](const std::vector<char>& x) {
        if (out.violating) return;
        for (int v = 0; v < inst.graph.num_nodes; ++v) complement[v] = !x[v];
        if (inst.f(complement) < 0) out.violating = x;
    });
    out.feasible = !out.violating.has_value();
    return out;
}

GaleResult gale_feasible(const Quiver& support, const Weight& sigma, int lowerset_limit) {
    const int n = support.num_vertices();
    if (static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument("gale_feasible: weight length mismatch");
    GaleResult out;
    long total = 0;
    for (long s : sigma) total += s;
    std::vector<std::vector<int>> succ(n);
    for (const Arc& a : support.arcs()) succ[a.tail].push_back(a.head);
    enumerate_lower_sets(succ, lowerset_limit, [&](const std::vector<char>& x) {
        if (out.witness) return;
        long sx = 0;
        for (int v = 0; v < n; ++v)
            if (x[v]) sx += sigma[v];
        if (sx > 0) {
            std::vector<int> verts;
            for (int v = 0; v < n; ++v)
                if (x[v]) verts.push_back(v);
            out.witness = verts;
        }
    });
    out.feasible = total == 0 && !out.witness.has_value();
    return out;
}

}  // namespace qss
