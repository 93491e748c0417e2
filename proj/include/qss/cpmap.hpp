#pragma once

#include <vector>

#include "qss/representation.hpp"
#include "qss/subrep.hpp"

namespace qss {

// Block-diagonal operator supported on an ordered subset of vertices.
struct BlockSet {
    std::vector<int> verts;
    std::vector<FloatMatrix> blocks;

    int find(int v) const {
        for (size_t i = 0; i < verts.size(); ++i)
            if (verts[i] == v) return static_cast<int>(i);
        return -1;
    }
};

BlockSet identity_blocks(const Representation& rep, const std::vector<int>& verts);
BlockSet weighted_identity_blocks(const Representation& rep, const std::vector<int>& verts,
                                  const std::vector<double>& weights);

// (Phi_V(X))_t = sum over s->t paths P of V(P) X_s V(P)^H, for t in sinks.
// Computed by one topological sweep; X lives on X.verts (typically Q0+).
BlockSet apply_phi(const Representation& rep, const FloatRep& frep, const BlockSet& x,
                   const std::vector<int>& sinks);

// Dual sweep: (Phi_V^*(Y))_s = sum over s->t paths P of V(P)^H Y_t V(P).
BlockSet apply_phi_dual(const Representation& rep, const FloatRep& frep, const BlockSet& y,
                        const std::vector<int>& sources);

// Exact-rational versions of the same sweeps (prechecks, certificate seeds).
std::vector<ExactMatrix> exact_apply_phi(const Representation& rep,
                                         const std::vector<ExactMatrix>& seeds);
std::vector<ExactMatrix> exact_apply_phi_dual(const Representation& rep,
                                              const std::vector<ExactMatrix>& seeds);

// |tr(Y^H Phi(X)) - tr(Phi^*(Y)^H X)| -- the adjointness residual.
double duality_residual(const Representation& rep, const FloatRep& frep, const BlockSet& x,
                        const BlockSet& y);

// Arc-wise scaled representation V_{g,h}: arcs with tail in Q0+ are
// right-multiplied by h_ta^H, arcs with head in Q0- are left-multiplied by
// g_ha, and both apply when both sides are signed.
FloatRep scale_representation(const Representation& rep, const Weight& sigma,
                              const std::vector<FloatMatrix>& g_minus,
                              const std::vector<FloatMatrix>& h_plus);

// Exact variant used by property tests (g, h rational).
Representation scale_representation_exact(const Representation& rep, const Weight& sigma,
                                          const std::vector<ExactMatrix>& g_minus,
                                          const std::vector<ExactMatrix>& h_plus);

}  // namespace qss
