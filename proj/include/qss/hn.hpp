#pragma once

#include <vector>

#include "qss/king.hpp"
#include "qss/rational.hpp"
#include "qss/subrep.hpp"

namespace qss {

// Harder-Narasimhan data: {0} = W_0 < W_1 < ... < W_k = V with strictly
// decreasing quotient slopes; criticals[i] is the sweep value at which step
// i+1 first appeared.
struct HNFiltration {
    std::vector<Subrep> chain;
    std::vector<Rational> slopes;
    std::vector<Rational> criticals;
};

// q sigma - p tau entrywise; q must be positive.
Weight slope_to_weight(const Weight& sigma, const Weight& tau, long p, long q);

// Sweep the candidate slopes p/q (p in [-sigma^-(alpha), sigma^+(alpha)],
// q in [1, tau(alpha)]) in decreasing order, appending the maximum maximizer
// of (q sigma - p tau)(dimv W) whenever it strictly grows. relaxed_tau admits
// zero entries in tau (coarse DM); otherwise tau must be strictly positive on
// every vertex carrying dimension.
HNFiltration hn_filtration(const Representation& rep, const Weight& sigma, const Weight& tau,
                           bool relaxed_tau = false, const KingConfig& cfg = {});

// Exact quotient outer/inner: complement bases chosen inside outer, maps by
// exact projection onto the complement coordinates.
Representation quotient_representation(const Representation& rep, const Subrep& inner,
                                       const Subrep& outer);

// Coarse Dulmage-Mendelsohn style decomposition of a tuple of matrices,
// realized as the HN filtration of the Kronecker representation with
// sigma = (1,0), tau = (0,1) after deleting columns zero in every matrix.
struct CoarseDM {
    std::vector<int> kept_columns;
    Representation kron;
    HNFiltration filtration;
    std::vector<ExactMatrix> y_flags;  // W_i(1) bases, i = 0..k
    std::vector<ExactMatrix> x_flags;  // (A(Y_i))^perp
    int blocks = 0;
};

CoarseDM coarse_dm(const std::vector<ExactMatrix>& matrices, const KingConfig& cfg = {});

}  // namespace qss
