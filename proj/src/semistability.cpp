#include "qss/semistability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qss/cpmap.hpp"

namespace qss {

namespace {

void check_sigma(const Representation& rep, const Weight& sigma) {
    if (static_cast<int>(sigma.size()) != rep.quiver.num_vertices())
        throw std::invalid_argument("semistability: weight length does not match vertex count");
}

double bound_formula(const Representation& rep, const Weight& sigma, const SsConfig& cfg) {
    long n_mass = weight_plus_total(sigma, rep.alpha);
    if (n_mass <= 0) return 0.0;
    long maxabs = 0;
    for (long s : sigma) maxabs = std::max(maxabs, std::labs(s));
    int bits = 0;
    while ((maxabs >> bits) != 0) ++bits;
    long dplus = 0, dminus = 0;
    for (int v = 0; v < rep.quiver.num_vertices(); ++v) {
        if (sigma[v] > 0) dplus += rep.alpha[v];
        else if (sigma[v] < 0) dminus += rep.alpha[v];
    }
    double d = static_cast<double>(std::max(dplus, dminus));
    double eps = cfg.epsilon_scale / (6.0 * static_cast<double>(n_mass));
    return std::ceil(cfg.iter_constant / (eps * eps) *
                     (static_cast<double>(bits) + d * std::log(static_cast<double>(n_mass) * d)));
}

}  // namespace

long scaling_iteration_bound(const Representation& rep, const Weight& sigma, const SsConfig& cfg) {
    double t = std::min(bound_formula(rep, sigma, cfg), static_cast<double>(cfg.max_iters));
    return std::max<long>(static_cast<long>(t), 1);
}

std::optional<Subrep> semistability_precheck_witness(const Representation& rep,
                                                     const Weight& sigma) {
    check_sigma(rep, sigma);
    const int n = rep.quiver.num_vertices();

    Subrep seeds = zero_subrep(rep);
    for (int v = 0; v < n; ++v)
        if (sigma[v] > 0) seeds.basis[v] = ExactMatrix::identity(rep.alpha[v]);
    Subrep image = closure_subrepresentation(rep, seeds);
    if (king_value(sigma, image) > 0) return image;

    std::vector<std::optional<ExactMatrix>> bounds(n);
    for (int v = 0; v < n; ++v)
        if (sigma[v] < 0) bounds[v] = ExactMatrix(rep.alpha[v], 0);
    Subrep kernel = co_closure_subrepresentation(rep, bounds);
    if (king_value(sigma, kernel) > 0) return kernel;

    return std::nullopt;
}

bool propose_from_engine(const Representation& rep, ScalingEngine& engine, const double* deltas,
                         int num_deltas, unsigned long round_den,
                         const std::function<bool(Subrep&&)>& sink) {
    const int n = rep.quiver.num_vertices();
    const ScalingSetup& setup = engine.setup();

    // Refresh what we can; a sweep that overflows just removes its proposal
    // family (the stored marginals stay usable block by block).
    std::vector<FloatMatrix> raw_plus, raw_minus;
    try {
        engine.compute_right_marginal();
        for (int s : setup.plus) raw_plus.push_back(engine.raw_accumulator(s));
    } catch (const numerical_error&) {
        raw_plus.clear();
    }
    std::vector<FloatMatrix> scaled_plus = engine.right_marginal();
    try {
        engine.compute_left_marginal();
        for (int t : setup.minus) raw_minus.push_back(engine.raw_accumulator(t));
    } catch (const numerical_error&) {
        raw_minus.clear();
    }

    auto family_scale = [](const std::vector<FloatMatrix>& blocks) {
        double s = 0.0;
        for (const FloatMatrix& b : blocks)
            if (!has_non_finite(b)) s = std::max(s, frobenius_norm(b));
        return s;
    };
    // floor 0 keeps the per-block relative cut; the family-wide floor lets a
    // block that collapsed as a whole register as all-small (or none-large).
    const double floors_plus[2] = {0.0, family_scale(raw_plus)};
    const double floors_scaled[2] = {0.0, family_scale(scaled_plus)};
    const double floors_minus[2] = {0.0, family_scale(raw_minus)};

    for (int di = 0; di < num_deltas; ++di) {
        double delta = deltas[di];
        for (int fi = 0; fi < 2; ++fi) {
            // Near-kernel directions of the unscaled right accumulators,
            // closed up from the sigma-positive side.
            if (!raw_plus.empty()) {
                Subrep seeds = zero_subrep(rep);
                bool any = false;
                for (size_t i = 0; i < setup.plus.size(); ++i) {
                    ExactMatrix cols = rounded_small_eigenspace(raw_plus[i], nullptr, delta,
                                                                round_den, floors_plus[fi]);
                    if (cols.cols() > 0) any = true;
                    seeds.basis[setup.plus[i]] = cols;
                }
                if (any && sink(closure_subrepresentation(rep, seeds))) return true;
            }

            // Same idea in the Sinkhorn-normalized coordinates, pulled back
            // through H^H (sharper when H is well conditioned but lopsided).
            {
                Subrep seeds = zero_subrep(rep);
                bool any = false;
                for (size_t i = 0; i < setup.plus.size(); ++i) {
                    ExactMatrix cols =
                        rounded_small_eigenspace(scaled_plus[i], &engine.h_blocks()[i], delta,
                                                 round_den, floors_scaled[fi]);
                    if (cols.cols() > 0) any = true;
                    seeds.basis[setup.plus[i]] = cols;
                }
                if (any && sink(closure_subrepresentation(rep, seeds))) return true;
            }

            // Surviving image directions of the unscaled left accumulators
            // bound the sigma-negative side; the co-closure is the largest
            // candidate.
            if (!raw_minus.empty()) {
                std::vector<std::optional<ExactMatrix>> bounds(n);
                bool any = false;
                for (size_t j = 0; j < setup.minus.size(); ++j) {
                    int v = setup.minus[j];
                    ExactMatrix cols = rounded_large_eigenspace(raw_minus[j], nullptr, delta,
                                                                round_den, floors_minus[fi]);
                    if (cols.cols() < rep.alpha[v]) any = true;
                    bounds[v] = cols;
                }
                if (any && sink(co_closure_subrepresentation(rep, bounds))) return true;
            }
        }
    }
    return false;
}

std::optional<Subrep> certificate_from_engine(const Representation& rep, const Weight& sigma,
                                              ScalingEngine& engine, unsigned long round_den) {
    static const double kDeltas[] = {1e-1, 1e-2, 1e-3, 1e-4};
    std::optional<Subrep> found;
    propose_from_engine(rep, engine, kDeltas, 4, round_den, [&](Subrep&& w) {
        if (king_value(sigma, w) > 0) {
            found = std::move(w);
            return true;
        }
        return false;
    });
    return found;
}

SsDecision decide_sigma_semistable(const Representation& rep, const Weight& sigma,
                                   const SsConfig& cfg) {
    require_valid(rep, "decide_sigma_semistable");
    check_sigma(rep, sigma);
    require_acyclic(rep.quiver, "decide_sigma_semistable");

    SsDecision out;
    if (weight_total(sigma, rep.alpha) != 0) {
        out.verdict = SsVerdict::weight_infeasible;
        out.certificate = "sigma(alpha) != 0";
        return out;
    }
    if (std::all_of(sigma.begin(), sigma.end(), [](long s) { return s == 0; })) {
        out.verdict = SsVerdict::semistable;
        out.certificate = "zero-weight";
        return out;
    }
    long n_mass = weight_plus_total(sigma, rep.alpha);
    if (n_mass == 0) {
        // Both signed sides live on zero-dimensional vertices: every
        // subrepresentation scores zero.
        out.verdict = SsVerdict::semistable;
        out.certificate = "zero-mass";
        return out;
    }
    if (semistability_precheck_witness(rep, sigma)) {
        out.verdict = SsVerdict::unstable;
        out.certificate = "rank-precheck";
        return out;
    }

    double t_raw = bound_formula(rep, sigma, cfg);
    bool capped = t_raw > static_cast<double>(cfg.max_iters);
    out.iteration_bound = scaling_iteration_bound(rep, sigma, cfg);

    // Copy-expanded doubly stochastic form: sigma enters as seed multiplicity,
    // so every per-vertex marginal block targets I/N (one copy's share).
    ScalingSetup setup;
    setup.plus = positive_vertices(sigma);
    setup.minus = negative_vertices(sigma);
    // A zero-dimensional vertex contributes no copies to the expanded map.
    std::erase_if(setup.plus, [&](int v) { return rep.alpha[v] == 0; });
    std::erase_if(setup.minus, [&](int v) { return rep.alpha[v] == 0; });
    for (int s : setup.plus) {
        setup.in_weight.push_back(static_cast<double>(sigma[s]));
        setup.target_plus.push_back(1.0 / static_cast<double>(n_mass));
    }
    for (int t : setup.minus) {
        setup.out_weight.push_back(static_cast<double>(-sigma[t]));
        setup.target_minus.push_back(1.0 / static_cast<double>(n_mass));
    }
    setup.eps = cfg.epsilon_scale / (6.0 * static_cast<double>(n_mass));
    setup.max_iterations = out.iteration_bound;
    setup.checkpoint_every = cfg.early_certificate ? cfg.checkpoint_every : 0;
    setup.verify_normalization = cfg.verify_normalization;

    ScalingEngine engine(rep, setup);
    std::optional<Subrep> witness;
    ScalingEngine::Checkpoint cb = [&](ScalingEngine& e) {
        witness = certificate_from_engine(rep, sigma, e, cfg.round_den);
        return witness.has_value();
    };

    ScalingOutcome oc;
    try {
        oc = engine.run(cb);
    } catch (const numerical_error&) {
        // A sweep overflowed mid-run. The stored engine state is still good
        // enough for one last certificate attempt before giving up.
        witness = certificate_from_engine(rep, sigma, engine, cfg.round_den);
        if (!witness) throw;
        oc = ScalingOutcome::stopped_at_checkpoint;
    }
    out.iterations = engine.iterations();
    out.max_post_left_residual = engine.max_post_left_residual();
    switch (oc) {
        case ScalingOutcome::converged:
            out.verdict = SsVerdict::semistable;
            out.final_residual = engine.converged_residual();
            out.certificate = "converged";
            return out;
        case ScalingOutcome::stopped_at_checkpoint:
            out.verdict = SsVerdict::unstable;
            out.final_residual = engine.last_residual();
            out.certificate = "exact-certificate";
            return out;
        case ScalingOutcome::exhausted:
            if (capped)
                throw numerical_error(
                    "semistability: iteration cap below the convergence bound and no exact "
                    "certificate found; raise max_iters");
            out.verdict = SsVerdict::unstable;
            out.final_residual = engine.last_residual();
            out.certificate = "iteration-exhaustion";
            return out;
        case ScalingOutcome::singular_marginal:
            break;
    }
    throw numerical_error(
        "semistability: scaling marginal went numerically singular without an exact certificate");
}

}  // namespace qss
