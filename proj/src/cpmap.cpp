#include "qss/cpmap.hpp"

#include <stdexcept>

namespace qss {

BlockSet identity_blocks(const Representation& rep, const std::vector<int>& verts) {
    BlockSet b;
    b.verts = verts;
    for (int v : verts) b.blocks.push_back(FloatMatrix::identity(rep.alpha[v]));
    return b;
}

BlockSet weighted_identity_blocks(const Representation& rep, const std::vector<int>& verts,
                                  const std::vector<double>& weights) {
    BlockSet b = identity_blocks(rep, verts);
    for (size_t i = 0; i < b.blocks.size(); ++i)
        for (cd& v : b.blocks[i].d) v *= weights[i];
    return b;
}

namespace {

std::vector<FloatMatrix> seeded_accumulators(const Representation& rep, const BlockSet& x) {
    std::vector<FloatMatrix> acc;
    acc.reserve(rep.quiver.num_vertices());
    for (int v = 0; v < rep.quiver.num_vertices(); ++v)
        acc.emplace_back(rep.alpha[v], rep.alpha[v]);
    for (size_t i = 0; i < x.verts.size(); ++i) {
        const FloatMatrix& blk = x.blocks[i];
        if (blk.rows != rep.alpha[x.verts[i]] || blk.cols != rep.alpha[x.verts[i]])
            throw std::invalid_argument("block shape mismatch in CP map input");
        acc[x.verts[i]] = blk;
    }
    return acc;
}

BlockSet collect(const std::vector<FloatMatrix>& acc, const std::vector<int>& verts) {
    BlockSet out;
    out.verts = verts;
    for (int v : verts) out.blocks.push_back(acc[v]);
    return out;
}

}  // namespace

BlockSet apply_phi(const Representation& rep, const FloatRep& frep, const BlockSet& x,
                   const std::vector<int>& sinks) {
    TopoOrder topo = require_acyclic(rep.quiver, "apply_phi");
    std::vector<FloatMatrix> acc = seeded_accumulators(rep, x);
    for (int a : topo.arc_order) {
        const Arc& arc = rep.quiver.arc(a);
        if (rep.alpha[arc.tail] == 0 || rep.alpha[arc.head] == 0) continue;
        const FloatMatrix& va = frep.mats[a];
        FloatMatrix t(va.rows, acc[arc.tail].cols);
        gemm_nn_acc(t, va, acc[arc.tail]);
        gemm_nh_acc(acc[arc.head], t, va);
    }
    return collect(acc, sinks);
}

BlockSet apply_phi_dual(const Representation& rep, const FloatRep& frep, const BlockSet& y,
                        const std::vector<int>& sources) {
    TopoOrder topo = require_acyclic(rep.quiver, "apply_phi_dual");
    std::vector<FloatMatrix> acc = seeded_accumulators(rep, y);
    for (auto it = topo.arc_order.rbegin(); it != topo.arc_order.rend(); ++it) {
        const Arc& arc = rep.quiver.arc(*it);
        if (rep.alpha[arc.tail] == 0 || rep.alpha[arc.head] == 0) continue;
        const FloatMatrix& va = frep.mats[*it];
        FloatMatrix t(va.cols, acc[arc.head].cols);
        gemm_hn_acc(t, va, acc[arc.head]);
        gemm_nn_acc(acc[arc.tail], t, va);
    }
    return collect(acc, sources);
}

std::vector<ExactMatrix> exact_apply_phi(const Representation& rep,
                                         const std::vector<ExactMatrix>& seeds) {
    TopoOrder topo = require_acyclic(rep.quiver, "exact_apply_phi");
    std::vector<ExactMatrix> acc = seeds;
    for (int a : topo.arc_order) {
        const Arc& arc = rep.quiver.arc(a);
        const ExactMatrix& va = rep.mat(a);
        acc[arc.head] = acc[arc.head] + va * acc[arc.tail] * va.adjoint();
    }
    return acc;
}

std::vector<ExactMatrix> exact_apply_phi_dual(const Representation& rep,
                                              const std::vector<ExactMatrix>& seeds) {
    TopoOrder topo = require_acyclic(rep.quiver, "exact_apply_phi_dual");
    std::vector<ExactMatrix> acc = seeds;
    for (auto it = topo.arc_order.rbegin(); it != topo.arc_order.rend(); ++it) {
        const Arc& arc = rep.quiver.arc(*it);
        const ExactMatrix& va = rep.mat(*it);
        acc[arc.tail] = acc[arc.tail] + va.adjoint() * acc[arc.head] * va;
    }
    return acc;
}

double duality_residual(const Representation& rep, const FloatRep& frep, const BlockSet& x,
                        const BlockSet& y) {
    BlockSet phix = apply_phi(rep, frep, x, y.verts);
    BlockSet phiy = apply_phi_dual(rep, frep, y, x.verts);
    cd lhs(0.0, 0.0), rhs(0.0, 0.0);
    for (size_t i = 0; i < y.verts.size(); ++i) {
        // tr(Y^H Phi(X)) block by block
        const FloatMatrix& yb = y.blocks[i];
        const FloatMatrix& pb = phix.blocks[i];
        for (int r = 0; r < yb.rows; ++r)
            for (int c = 0; c < yb.cols; ++c) lhs += std::conj(yb.at(r, c)) * pb.at(r, c);
    }
    for (size_t i = 0; i < x.verts.size(); ++i) {
        const FloatMatrix& xb = x.blocks[i];
        const FloatMatrix& pb = phiy.blocks[i];
        for (int r = 0; r < xb.rows; ++r)
            for (int c = 0; c < xb.cols; ++c) rhs += std::conj(pb.at(r, c)) * xb.at(r, c);
    }
    return std::abs(lhs - rhs);
}

namespace {

int signed_position(const std::vector<int>& verts, int v) {
    for (size_t i = 0; i < verts.size(); ++i)
        if (verts[i] == v) return static_cast<int>(i);
    return -1;
}

}  // namespace

FloatRep scale_representation(const Representation& rep, const Weight& sigma,
                              const std::vector<FloatMatrix>& g_minus,
                              const std::vector<FloatMatrix>& h_plus) {
    std::vector<int> plus = positive_vertices(sigma);
    std::vector<int> minus = negative_vertices(sigma);
    if (g_minus.size() != minus.size() || h_plus.size() != plus.size())
        throw std::invalid_argument("scale_representation: block count mismatch");
    FloatRep out = to_float(rep);
    for (int a = 0; a < rep.quiver.num_arcs(); ++a) {
        const Arc& arc = rep.quiver.arc(a);
        int hp = signed_position(plus, arc.tail);
        int gm = signed_position(minus, arc.head);
        if (hp >= 0) out.mats[a] = mul_nh(out.mats[a], h_plus[hp]);
        if (gm >= 0) out.mats[a] = mul_nn(g_minus[gm], out.mats[a]);
    }
    return out;
}

Representation scale_representation_exact(const Representation& rep, const Weight& sigma,
                                          const std::vector<ExactMatrix>& g_minus,
                                          const std::vector<ExactMatrix>& h_plus) {
    std::vector<int> plus = positive_vertices(sigma);
    std::vector<int> minus = negative_vertices(sigma);
    if (g_minus.size() != minus.size() || h_plus.size() != plus.size())
        throw std::invalid_argument("scale_representation_exact: block count mismatch");
    Representation out = rep;
    for (int a = 0; a < rep.quiver.num_arcs(); ++a) {
        const Arc& arc = rep.quiver.arc(a);
        int hp = signed_position(plus, arc.tail);
        int gm = signed_position(minus, arc.head);
        if (hp >= 0) out.mats[a] = out.mats[a] * h_plus[hp].adjoint();
        if (gm >= 0) out.mats[a] = g_minus[gm] * out.mats[a];
    }
    return out;
}

}  // namespace qss
