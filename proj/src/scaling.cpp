#include "qss/scaling.hpp"

#include <cmath>

namespace qss {

ScalingEngine::ScalingEngine(const Representation& rep, ScalingSetup setup)
    : rep_(rep), frep_(to_float(rep)), setup_(std::move(setup)) {
    arc_order_ = require_acyclic(rep.quiver, "scaling").arc_order;
    for (int s : setup_.plus) h_.push_back(FloatMatrix::identity(rep.alpha[s]));
    for (int t : setup_.minus) g_.push_back(FloatMatrix::identity(rep.alpha[t]));
    left_marg_.assign(setup_.minus.size(), FloatMatrix());
    right_marg_.assign(setup_.plus.size(), FloatMatrix());
    for (int v = 0; v < rep.quiver.num_vertices(); ++v)
        acc_.emplace_back(rep.alpha[v], rep.alpha[v]);
    touched_.assign(rep.quiver.num_vertices(), 0);
}

void ScalingEngine::compute_left_marginal() {
    for (auto& m : acc_) m.set_zero();
    std::fill(touched_.begin(), touched_.end(), 0);
    for (size_t i = 0; i < setup_.plus.size(); ++i) {
        int s = setup_.plus[i];
        FloatMatrix& a = acc_[s];
        gemm_hn_acc(a, h_[i], h_[i]);  // H^H H
        for (cd& v : a.d) v *= setup_.in_weight[i];
        touched_[s] = 1;
    }
    for (int ai : arc_order_) {
        const Arc& arc = rep_.quiver.arc(ai);
        if (!touched_[arc.tail]) continue;
        if (rep_.alpha[arc.tail] == 0 || rep_.alpha[arc.head] == 0) continue;
        const FloatMatrix& va = frep_.mats[ai];
        FloatMatrix t(va.rows, acc_[arc.tail].cols);
        gemm_nn_acc(t, va, acc_[arc.tail]);
        gemm_nh_acc(acc_[arc.head], t, va);
        touched_[arc.head] = 1;
    }
    for (size_t j = 0; j < setup_.minus.size(); ++j) {
        int t = setup_.minus[j];
        FloatMatrix gm(g_[j].rows, acc_[t].cols);
        gemm_nn_acc(gm, g_[j], acc_[t]);
        left_marg_[j] = mul_nh(gm, g_[j]);
        if (has_non_finite(left_marg_[j]))
            throw numerical_error("scaling: non-finite left marginal at vertex " +
                                  rep_.quiver.vertex_id(t));
    }
}

void ScalingEngine::compute_right_marginal() {
    for (auto& m : acc_) m.set_zero();
    std::fill(touched_.begin(), touched_.end(), 0);
    for (size_t j = 0; j < setup_.minus.size(); ++j) {
        int t = setup_.minus[j];
        FloatMatrix& a = acc_[t];
        gemm_hn_acc(a, g_[j], g_[j]);  // G^H G
        for (cd& v : a.d) v *= setup_.out_weight[j];
        touched_[t] = 1;
    }
    for (auto it = arc_order_.rbegin(); it != arc_order_.rend(); ++it) {
        const Arc& arc = rep_.quiver.arc(*it);
        if (!touched_[arc.head]) continue;
        if (rep_.alpha[arc.tail] == 0 || rep_.alpha[arc.head] == 0) continue;
        const FloatMatrix& va = frep_.mats[*it];
        FloatMatrix t(va.cols, acc_[arc.head].cols);
        gemm_hn_acc(t, va, acc_[arc.head]);
        gemm_nn_acc(acc_[arc.tail], t, va);
        touched_[arc.tail] = 1;
    }
    for (size_t i = 0; i < setup_.plus.size(); ++i) {
        int s = setup_.plus[i];
        FloatMatrix hm(h_[i].rows, acc_[s].cols);
        gemm_nn_acc(hm, h_[i], acc_[s]);
        right_marg_[i] = mul_nh(hm, h_[i]);
        if (has_non_finite(right_marg_[i]))
            throw numerical_error("scaling: non-finite right marginal at vertex " +
                                  rep_.quiver.vertex_id(s));
    }
}

namespace {

// Trace-norm distance to the balanced point of the copy-expanded map: each
// vertex block appears with its weight's multiplicity.
double marginal_residual(const std::vector<FloatMatrix>& blocks, const std::vector<double>& target,
                         const std::vector<double>& multiplicity) {
    double s = 0.0;
    for (size_t i = 0; i < blocks.size(); ++i) {
        const FloatMatrix& m = blocks[i];
        FloatMatrix diff = m;
        for (int d = 0; d < m.rows; ++d) diff.at(d, d) -= target[i];
        // Hermitize against float round-off before the eigensolve.
        for (int r = 0; r < diff.rows; ++r)
            for (int c = r + 1; c < diff.cols; ++c) {
                cd avg = 0.5 * (diff.at(r, c) + std::conj(diff.at(c, r)));
                diff.at(r, c) = avg;
                diff.at(c, r) = std::conj(avg);
            }
        double block = 0.0;
        for (double lam : hermitian_eigenvalues(diff)) block += std::abs(lam);
        s += multiplicity[i] * block;
    }
    return s;
}

}  // namespace

double ScalingEngine::left_residual() const {
    return marginal_residual(left_marg_, setup_.target_minus, setup_.out_weight);
}
double ScalingEngine::right_residual() const {
    return marginal_residual(right_marg_, setup_.target_plus, setup_.in_weight);
}

namespace {

// Relative Cholesky tolerances stop meaning anything once a whole block has
// collapsed; treat such marginals as singular so a certificate pass runs
// while the scalings are still finite.
bool marginal_collapsed(const FloatMatrix& m) {
    if (m.rows == 0) return false;
    double tr = trace_real(m);
    return !(tr > 1e-250);
}

}  // namespace

bool ScalingEngine::normalize_left() {
    for (size_t j = 0; j < setup_.minus.size(); ++j) {
        if (marginal_collapsed(left_marg_[j])) return false;
        CholeskyResult ch = cholesky(left_marg_[j]);
        if (!ch.ok) return false;
        FloatMatrix cinv = lower_triangular_inverse(ch.lower);
        double scale = std::sqrt(setup_.target_minus[j]);
        for (cd& v : cinv.d) v *= scale;
        g_[j] = mul_nn(cinv, g_[j]);
    }
    return true;
}

bool ScalingEngine::normalize_right() {
    for (size_t i = 0; i < setup_.plus.size(); ++i) {
        if (marginal_collapsed(right_marg_[i])) return false;
        CholeskyResult ch = cholesky(right_marg_[i]);
        if (!ch.ok) return false;
        FloatMatrix cinv = lower_triangular_inverse(ch.lower);
        double scale = std::sqrt(setup_.target_plus[i]);
        for (cd& v : cinv.d) v *= scale;
        h_[i] = mul_nn(cinv, h_[i]);
    }
    return true;
}

namespace {

// Unstable instances push the scalings off to infinity; cut the run while
// squares of every entry still fit in a double so the certificate search can
// work with finite state.
bool blocks_diverged(const std::vector<FloatMatrix>& blocks) {
    for (const FloatMatrix& b : blocks)
        for (const cd& v : b.d)
            if (!(std::abs(v.real()) < 1e60) || !(std::abs(v.imag()) < 1e60)) return true;
    return false;
}

}  // namespace

ScalingOutcome ScalingEngine::run(const Checkpoint& checkpoint) {
    // Unscaled start: declare convergence only when both sides already sit
    // within eps (no normalization has made either side exact yet).
    compute_left_marginal();
    compute_right_marginal();
    double l0 = left_residual(), r0 = right_residual();
    last_residual_ = std::max(l0, r0);
    if (last_residual_ <= setup_.eps) {
        converged_residual_ = last_residual_;
        return ScalingOutcome::converged;
    }
    bool right_exact = false;
    for (iter_ = 1; iter_ <= setup_.max_iterations; ++iter_) {
        if (iter_ > 1) compute_left_marginal();
        double lres = iter_ > 1 ? left_residual() : l0;
        last_residual_ = lres;
        if (right_exact && lres <= setup_.eps) {
            converged_residual_ = lres;
            return ScalingOutcome::converged;
        }
        if (!normalize_left() || blocks_diverged(g_)) {
            if (checkpoint && checkpoint(*this)) return ScalingOutcome::stopped_at_checkpoint;
            return ScalingOutcome::singular_marginal;
        }
        if (setup_.verify_normalization) {
            compute_left_marginal();
            max_post_left_residual_ = std::max(max_post_left_residual_, left_residual());
        }
        compute_right_marginal();
        double rres = right_residual();
        last_residual_ = rres;
        if (rres <= setup_.eps) {  // left side exact by the normalization above
            converged_residual_ = rres;
            return ScalingOutcome::converged;
        }
        if (!normalize_right() || blocks_diverged(h_)) {
            if (checkpoint && checkpoint(*this)) return ScalingOutcome::stopped_at_checkpoint;
            return ScalingOutcome::singular_marginal;
        }
        right_exact = true;
        if (checkpoint && setup_.checkpoint_every > 0 && iter_ % setup_.checkpoint_every == 0) {
            if (checkpoint(*this)) return ScalingOutcome::stopped_at_checkpoint;
        }
    }
    iter_ = setup_.max_iterations;
    if (checkpoint && checkpoint(*this)) return ScalingOutcome::stopped_at_checkpoint;
    return ScalingOutcome::exhausted;
}

namespace {

GaussianRational round_entry(cd v, unsigned long den) {
    return {rational_round(v.real(), den), rational_round(v.imag(), den)};
}

ExactMatrix round_columns(const FloatMatrix& cols, unsigned long den) {
    ExactMatrix out(cols.rows, cols.cols);
    for (int c = 0; c < cols.cols; ++c) {
        // Normalize by the largest-modulus entry so clean rational structure
        // survives the float detour.
        int best = 0;
        double bestmag = 0.0;
        for (int r = 0; r < cols.rows; ++r) {
            double mag = std::abs(cols.at(r, c));
            if (mag > bestmag) {
                bestmag = mag;
                best = r;
            }
        }
        if (bestmag < 1e-14) continue;
        cd pivot = cols.at(best, c);
        for (int r = 0; r < cols.rows; ++r) out.at(r, c) = round_entry(cols.at(r, c) / pivot, den);
    }
    return out;
}

ExactMatrix eigenspace_proposal(const FloatMatrix& m, const FloatMatrix* map_adjoint, double delta,
                                unsigned long round_den, bool small_side, double scale_floor) {
    int ambient0 = map_adjoint ? map_adjoint->cols : m.rows;
    if (m.rows == 0) return ExactMatrix(ambient0, 0);
    if (has_non_finite(m) || (map_adjoint && has_non_finite(*map_adjoint)))
        return ExactMatrix(ambient0, 0);
    FloatMatrix herm = m;
    for (int r = 0; r < herm.rows; ++r)
        for (int c = r + 1; c < herm.cols; ++c) {
            cd avg = 0.5 * (herm.at(r, c) + std::conj(herm.at(c, r)));
            herm.at(r, c) = avg;
            herm.at(c, r) = std::conj(avg);
        }
    HermitianEig eig = hermitian_eigensystem(herm);
    double lmax = eig.values.empty() ? 0.0 : eig.values.back();
    double cut = delta * std::max({lmax, scale_floor, 1e-300});
    std::vector<int> picked;
    for (int i = 0; i < static_cast<int>(eig.values.size()); ++i) {
        bool is_small = eig.values[i] < cut;
        if (is_small == small_side) picked.push_back(i);
    }
    int ambient = map_adjoint ? map_adjoint->cols : m.rows;
    if (picked.empty()) return ExactMatrix(ambient, 0);
    FloatMatrix sel(m.rows, static_cast<int>(picked.size()));
    for (size_t j = 0; j < picked.size(); ++j)
        for (int r = 0; r < m.rows; ++r) sel.at(r, static_cast<int>(j)) = eig.vectors.at(r, picked[j]);
    FloatMatrix mapped = map_adjoint ? mul_hn(*map_adjoint, sel) : sel;
    return round_columns(mapped, round_den);
}

}  // namespace

ExactMatrix rounded_small_eigenspace(const FloatMatrix& m, const FloatMatrix* map_adjoint,
                                     double delta, unsigned long round_den, double scale_floor) {
    return eigenspace_proposal(m, map_adjoint, delta, round_den, true, scale_floor);
}

ExactMatrix rounded_large_eigenspace(const FloatMatrix& m, const FloatMatrix* map_adjoint,
                                     double delta, unsigned long round_den, double scale_floor) {
    return eigenspace_proposal(m, map_adjoint, delta, round_den, false, scale_floor);
}

}  // namespace qss
