#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qss/cpmap.hpp"
#include "qss/representation.hpp"

namespace qss {

struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two-sided operator Sinkhorn on the path CP map of a representation, kept as
// cumulative block scalings (G over the minus side, H over the plus side) of
// the fixed map: left marginal G Phi(w+ . H^H H) G^H, right marginal
// H Phi^*(w- . G^H G) H^H. Each half-step Cholesky-normalizes one marginal to
// its target density, making that side exact by construction; convergence is
// declared when a residual is within eps while the opposite side is exact.
struct ScalingSetup {
    std::vector<int> plus, minus;      // signed vertex lists
    std::vector<double> in_weight;     // per plus vertex (1 or sigma^+)
    std::vector<double> out_weight;    // per minus vertex (1 or sigma^-)
    std::vector<double> target_plus;   // right marginal target density per plus vertex
    std::vector<double> target_minus;  // left marginal target density per minus vertex
    double eps = 0.0;
    long max_iterations = 0;
    long checkpoint_every = 0;         // 0 = no checkpoints
    bool verify_normalization = false; // re-measure the just-normalized side (instrumentation)
};

enum class ScalingOutcome { converged, stopped_at_checkpoint, exhausted, singular_marginal };

class ScalingEngine {
  public:
    ScalingEngine(const Representation& rep, ScalingSetup setup);

    // Checkpoint hook: inspect the engine and return true to stop the run.
    // Also consulted once when the iteration budget is exhausted and when a
    // marginal goes numerically singular.
    using Checkpoint = std::function<bool(ScalingEngine&)>;

    ScalingOutcome run(const Checkpoint& checkpoint = nullptr);

    long iterations() const { return iter_; }
    double last_residual() const { return last_residual_; }
    double converged_residual() const { return converged_residual_; }
    double max_post_left_residual() const { return max_post_left_residual_; }

    const ScalingSetup& setup() const { return setup_; }
    const std::vector<FloatMatrix>& g_blocks() const { return g_; }
    const std::vector<FloatMatrix>& h_blocks() const { return h_; }
    const std::vector<FloatMatrix>& left_marginal() const { return left_marg_; }
    const std::vector<FloatMatrix>& right_marginal() const { return right_marg_; }

    void compute_left_marginal();
    void compute_right_marginal();
    double left_residual() const;
    double right_residual() const;

    // Unscaled per-vertex accumulator of whichever sweep ran last:
    // Phi(w+ . H^H H)_v after compute_left_marginal, Phi^*(w- . G^H G)_v
    // after compute_right_marginal. Lives in the original coordinates.
    const FloatMatrix& raw_accumulator(int v) const { return acc_[v]; }

  private:
    bool normalize_left();   // false when a Cholesky pivot signals singularity
    bool normalize_right();

    const Representation& rep_;
    FloatRep frep_;
    ScalingSetup setup_;
    std::vector<int> arc_order_;
    std::vector<FloatMatrix> g_, h_;
    std::vector<FloatMatrix> left_marg_, right_marg_;
    std::vector<FloatMatrix> acc_;
    std::vector<char> touched_;
    long iter_ = 0;
    double last_residual_ = -1.0;
    double converged_residual_ = -1.0;
    double max_post_left_residual_ = 0.0;
};

// Proposal utilities shared by the certificate search and the maximizer's
// propose-and-verify path. Columns of the result are exact rounded directions
// spanned by eigenvectors of m with eigenvalue < delta * scale, where scale is
// max(lambda_max, scale_floor); a caller-supplied floor lets a block that has
// collapsed uniformly (own lambda_max tiny against its peers) count as all
// small. Directions are mapped through map_adjoint^H when given (pulling
// scaled coordinates back to the original ones).
ExactMatrix rounded_small_eigenspace(const FloatMatrix& m, const FloatMatrix* map_adjoint,
                                     double delta, unsigned long round_den,
                                     double scale_floor = 0.0);

// Orthogonal-complement variant: exact rounded basis of the directions NOT
// collapsing (eigenvalue >= delta * scale), for upper-bound style proposals.
ExactMatrix rounded_large_eigenspace(const FloatMatrix& m, const FloatMatrix* map_adjoint,
                                     double delta, unsigned long round_den,
                                     double scale_floor = 0.0);

}  // namespace qss
