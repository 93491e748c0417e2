#pragma once

#include <optional>
#include <string>

#include "qss/scaling.hpp"
#include "qss/subrep.hpp"

namespace qss {

enum class SsVerdict { semistable, unstable, weight_infeasible };

struct SsConfig {
    double epsilon_scale = 1.0;    // eps = epsilon_scale / (6N)
    double iter_constant = 10.0;   // c in T = ceil(c eps^-2 (b + d ln(N d)))
    long max_iters = 1000000;      // hard cap on T
    long checkpoint_every = 25;    // cadence of the certificate search (0 disables)
    unsigned long round_den = 1000000;
    bool early_certificate = true;
    bool verify_normalization = false;  // instrument post-normalization residuals
};

struct SsDecision {
    SsVerdict verdict = SsVerdict::unstable;
    long iterations = 0;
    double final_residual = -1.0;
    long iteration_bound = 0;
    double max_post_left_residual = 0.0;
    // How the verdict was reached: "zero-weight", "rank-precheck",
    // "converged", "exact-certificate", "iteration-exhaustion".
    std::string certificate;
};

// Iteration budget of the scaling loop for this instance (before the hard cap).
long scaling_iteration_bound(const Representation& rep, const Weight& sigma, const SsConfig& cfg);

// Exact prechecks: the image closure (full seeds on Q0+) and the kernel
// co-closure (zero bounds on Q0-) are subrepresentations whose King value is
// positive exactly when a marginal block of Phi(I) / Phi^*(I) is rank
// deficient; either witnesses instability outright.
std::optional<Subrep> semistability_precheck_witness(const Representation& rep, const Weight& sigma);

// Stream exact candidate subrepresentations derived from the engine's current
// marginals (thresholded eigendirections, rounded, closed up exactly) to
// `sink`; stops early once sink returns true. Returns whether it stopped.
bool propose_from_engine(const Representation& rep, ScalingEngine& engine, const double* deltas,
                         int num_deltas, unsigned long round_den,
                         const std::function<bool(Subrep&&)>& sink);

// Exact certificate search used at scaling checkpoints: keep the first
// proposal with positive King value.
std::optional<Subrep> certificate_from_engine(const Representation& rep, const Weight& sigma,
                                              ScalingEngine& engine, unsigned long round_den);

SsDecision decide_sigma_semistable(const Representation& rep, const Weight& sigma,
                                   const SsConfig& cfg = {});

}  // namespace qss
