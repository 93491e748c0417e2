#pragma once

#include <stdexcept>
#include <utility>

#include "qss/cpmap.hpp"
#include "qss/semistability.hpp"
#include "qss/subrep.hpp"

namespace qss {

struct weight_infeasible_error : std::domain_error {
    using std::domain_error::domain_error;
};

enum class MaximizerMethod { exact_combinatorial, propose_verify };

struct KingMaximizer {
    Subrep w;
    long value = 0;
    // Extremality certified: always on the exact-combinatorial subclasses,
    // on sign-uniform weights, and for the trivial extremes of a certified
    // semistable instance; otherwise the best verified candidate with false.
    bool minimal = false;
    MaximizerMethod method = MaximizerMethod::propose_verify;
};

inline SsConfig default_king_scaling() {
    SsConfig c;
    c.max_iters = 20000;
    c.checkpoint_every = 25;
    return c;
}

struct KingConfig {
    SsConfig scaling = default_king_scaling();
    int lowerset_limit = 24;
    // Coordinate-subspace proposals are enumerated only while the joint
    // signed-side dimension keeps the count under 2^budget closures.
    int coordinate_budget_bits = 12;
};

// (Phi_V(J+_sigma) over Q0-, Phi_V^*(J-_sigma) over Q0+) with
// J+_sigma = (+)_s sigma^+(s) I, J-_sigma = (+)_t sigma^-(t) I.
std::pair<BlockSet, BlockSet> phi_sigma_marginals(const Representation& rep, const Weight& sigma);

// Extreme maximizers of W -> sigma(dimv W). Require sigma(alpha) = 0.
KingMaximizer min_maximizer(const Representation& rep, const Weight& sigma,
                            const KingConfig& cfg = {});
KingMaximizer max_maximizer(const Representation& rep, const Weight& sigma,
                            const KingConfig& cfg = {});

// Same search without the balanced-weight precondition; the HN filtration
// evaluates King's functional at general slope weights.
KingMaximizer maximizer_unbalanced(const Representation& rep, const Weight& sigma, bool want_max,
                                   const KingConfig& cfg = {});

}  // namespace qss
