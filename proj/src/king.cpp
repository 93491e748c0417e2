#include "qss/king.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <tuple>

#include "qss/rankone.hpp"

namespace qss {

namespace {

void check_sigma(const Representation& rep, const Weight& sigma, const char* where) {
    if (static_cast<int>(sigma.size()) != rep.quiver.num_vertices())
        throw std::invalid_argument(std::string(where) + ": weight length mismatch");
}

// Running meet/join of every optimal-value candidate seen so far. Dimension
// counting is modular on the subrepresentation lattice, so both stay optimal.
struct Pool {
    const Representation& rep;
    const Weight& sigma;
    bool has = false;
    long best = 0;
    Subrep meet, join;

    void offer(Subrep&& w) {
        long val = king_value(sigma, w);
        if (!has || val > best) {
            has = true;
            best = val;
            meet = w;
            join = std::move(w);
            return;
        }
        if (val < best) return;
        meet = subrep_intersection(rep, meet, w);
        join = subrep_sum(rep, join, w);
    }
};

KingMaximizer finish(const Representation& rep, const Weight& sigma, Subrep w, long expect,
                     bool minimal, MaximizerMethod method) {
    KingMaximizer out;
    out.w = canonicalize(rep, std::move(w));
    out.value = king_value(sigma, out.w);
    out.minimal = minimal;
    out.method = method;
    if (!is_subrepresentation(rep, out.w) || out.value != expect)
        throw std::logic_error("king: constructed maximizer failed exact verification");
    return out;
}

std::optional<KingMaximizer> sign_uniform(const Representation& rep, const Weight& sigma,
                                          bool want_max) {
    bool any_pos = false, any_neg = false;
    for (size_t v = 0; v < sigma.size(); ++v) {
        if (sigma[v] > 0 && rep.alpha[v] > 0) any_pos = true;
        if (sigma[v] < 0 && rep.alpha[v] > 0) any_neg = true;
    }
    const int n = rep.quiver.num_vertices();
    if (!any_neg) {
        long total = weight_total(sigma, rep.alpha);
        if (want_max)
            return finish(rep, sigma, full_subrep(rep), total, true,
                          MaximizerMethod::exact_combinatorial);
        Subrep seeds = zero_subrep(rep);
        for (int v = 0; v < n; ++v)
            if (sigma[v] > 0) seeds.basis[v] = ExactMatrix::identity(rep.alpha[v]);
        return finish(rep, sigma, closure_subrepresentation(rep, seeds), total, true,
                      MaximizerMethod::exact_combinatorial);
    }
    if (!any_pos) {
        if (!want_max)
            return finish(rep, sigma, zero_subrep(rep), 0, true,
                          MaximizerMethod::exact_combinatorial);
        std::vector<std::optional<ExactMatrix>> bounds(n);
        for (int v = 0; v < n; ++v)
            if (sigma[v] < 0) bounds[v] = ExactMatrix(rep.alpha[v], 0);
        return finish(rep, sigma, co_closure_subrepresentation(rep, bounds), 0, true,
                      MaximizerMethod::exact_combinatorial);
    }
    return std::nullopt;
}

KingMaximizer alpha_one_path(const Representation& rep, const Weight& sigma, bool want_max,
                             int lowerset_limit) {
    const int n = rep.quiver.num_vertices();
    std::vector<std::vector<int>> succ(n);
    for (int a = 0; a < rep.quiver.num_arcs(); ++a)
        if (!rep.mat(a).is_zero()) succ[rep.quiver.arc(a).tail].push_back(rep.quiver.arc(a).head);

    long best = 0;
    bool seen = false;
    std::uint64_t and_mask = 0, or_mask = 0;
    enumerate_lower_sets(succ, lowerset_limit, [&](const std::vector<char>& x) {
        long val = 0;
        std::uint64_t mask = 0;
        for (int v = 0; v < n; ++v)
            if (x[v]) {
                val += sigma[v] * rep.alpha[v];
                mask |= std::uint64_t(1) << v;
            }
        if (!seen || val > best) {
            seen = true;
            best = val;
            and_mask = mask;
            or_mask = mask;
        } else if (val == best) {
            and_mask &= mask;
            or_mask |= mask;
        }
    });
    std::uint64_t pick = want_max ? or_mask : and_mask;
    Subrep w = zero_subrep(rep);
    for (int v = 0; v < n; ++v)
        if (pick >> v & 1) w.basis[v] = ExactMatrix::identity(rep.alpha[v]);
    return finish(rep, sigma, std::move(w), best, true, MaximizerMethod::exact_combinatorial);
}

// Extremal maximizer from an extremal optimal lower set of D[V]: intersected
// kernels of the outside functionals on the sigma-positive side, spans of the
// selected vectors on the sigma-negative side; the minimum flavor closes up
// from those blocks instead of taking them verbatim.
Subrep subrep_from_lower_set(const Representation& rep, const Weight& sigma, const RankOneRep& r1,
                             const VertexMatroids& vm, const std::vector<char>& x, bool max_flavor) {
    const int n = rep.quiver.num_vertices();
    auto kernel_block = [&](int v) {
        ExactMatrix rows(0, rep.alpha[v]);
        for (size_t j = 0; j < vm.out_nodes[v].size(); ++j)
            if (!x[vm.out_nodes[v][j]])
                rows = vstack(rows, r1.arcs[vm.out_nodes[v][j] / 2].f);
        return rows.rows() == 0 ? ExactMatrix::identity(rep.alpha[v]) : exact_kernel(rows);
    };
    auto span_block = [&](int v) {
        ExactMatrix cols(rep.alpha[v], 0);
        for (size_t j = 0; j < vm.in_nodes[v].size(); ++j)
            if (x[vm.in_nodes[v][j]]) cols = hstack(cols, r1.arcs[vm.in_nodes[v][j] / 2].v);
        return cols;
    };
    Subrep w = zero_subrep(rep);
    if (max_flavor) {
        for (int v = 0; v < n; ++v)
            w.basis[v] = sigma[v] >= 0 ? kernel_block(v) : column_span_basis(span_block(v));
        return w;
    }
    for (int v = 0; v < n; ++v) {
        if (sigma[v] > 0)
            w.basis[v] = kernel_block(v);
        else if (sigma[v] < 0)
            w.basis[v] = span_block(v);
    }
    return closure_subrepresentation(rep, w);
}

KingMaximizer rank_one_path(const Representation& rep, const Weight& sigma, bool want_max,
                            int lowerset_limit) {
    // Zero arcs never constrain a subrepresentation; strip them so the
    // factorization sees rank exactly one everywhere.
    Representation stripped;
    for (int v = 0; v < rep.quiver.num_vertices(); ++v)
        stripped.quiver.add_vertex(rep.quiver.vertex_id(v));
    stripped.alpha = rep.alpha;
    for (int a = 0; a < rep.quiver.num_arcs(); ++a) {
        if (rep.mat(a).is_zero()) continue;
        stripped.quiver.add_arc(rep.quiver.arc(a).id, rep.quiver.arc(a).tail,
                                rep.quiver.arc(a).head);
        stripped.mats.push_back(rep.mat(a));
    }
    RankOneRep r1 = factorize_rank_one(stripped);
    DVGraph dv = build_dv_graph(r1);
    VertexMatroids vm = build_vertex_matroids(r1);
    long base = weight_plus_total(sigma, rep.alpha);

    long best = 0;
    bool seen = false;
    std::uint64_t and_mask = 0, or_mask = 0;
    enumerate_lower_sets(dv.succ, lowerset_limit, [&](const std::vector<char>& x) {
        long val = base - k2_lhs(r1, sigma, vm, x);
        std::uint64_t mask = 0;
        for (int u = 0; u < dv.num_nodes; ++u)
            if (x[u]) mask |= std::uint64_t(1) << u;
        if (!seen || val > best) {
            seen = true;
            best = val;
            and_mask = mask;
            or_mask = mask;
        } else if (val == best) {
            and_mask &= mask;
            or_mask |= mask;
        }
    });
    std::uint64_t pick = want_max ? or_mask : and_mask;
    std::vector<char> x(dv.num_nodes);
    for (int u = 0; u < dv.num_nodes; ++u) x[u] = (pick >> u & 1) != 0;
    Subrep w = subrep_from_lower_set(rep, sigma, r1, vm, x, want_max);
    return finish(rep, sigma, std::move(w), best, true, MaximizerMethod::exact_combinatorial);
}

void coordinate_candidates(const Representation& rep, const Weight& sigma, int budget_bits,
                           Pool& pool) {
    const int n = rep.quiver.num_vertices();
    budget_bits = std::min(budget_bits, 20);
    auto gather = [&](bool positive) {
        std::vector<std::pair<int, int>> slots;  // (vertex, coordinate)
        for (int v = 0; v < n; ++v)
            if ((positive && sigma[v] > 0) || (!positive && sigma[v] < 0))
                for (int c = 0; c < rep.alpha[v]; ++c) slots.emplace_back(v, c);
        return slots;
    };

    std::vector<std::pair<int, int>> plus = gather(true);
    if (!plus.empty() && static_cast<int>(plus.size()) <= budget_bits) {
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << plus.size()); ++mask) {
            Subrep seeds = zero_subrep(rep);
            std::vector<ExactMatrix> cols(n, ExactMatrix(0, 0));
            for (int v = 0; v < n; ++v) cols[v] = ExactMatrix(rep.alpha[v], 0);
            for (size_t j = 0; j < plus.size(); ++j)
                if (mask >> j & 1) {
                    ExactMatrix e(rep.alpha[plus[j].first], 1);
                    e.at(plus[j].second, 0) = GaussianRational{Rational(1), Rational(0)};
                    cols[plus[j].first] = hstack(cols[plus[j].first], e);
                }
            for (int v = 0; v < n; ++v) seeds.basis[v] = cols[v];
            pool.offer(closure_subrepresentation(rep, seeds));
        }
    }

    std::vector<std::pair<int, int>> minus = gather(false);
    if (!minus.empty() && static_cast<int>(minus.size()) <= budget_bits) {
        for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t(1) << minus.size()); ++mask) {
            std::vector<std::optional<ExactMatrix>> bounds(n);
            for (int v = 0; v < n; ++v)
                if (sigma[v] < 0) bounds[v] = ExactMatrix(rep.alpha[v], 0);
            for (size_t j = 0; j < minus.size(); ++j)
                if (mask >> j & 1) {
                    ExactMatrix e(rep.alpha[minus[j].first], 1);
                    e.at(minus[j].second, 0) = GaussianRational{Rational(1), Rational(0)};
                    *bounds[minus[j].first] = hstack(*bounds[minus[j].first], e);
                }
            pool.offer(co_closure_subrepresentation(rep, bounds));
        }
    }
}

KingMaximizer general_path(const Representation& rep, const Weight& sigma, bool want_max,
                           const KingConfig& cfg, bool balanced) {
    const int n = rep.quiver.num_vertices();
    Pool pool{rep, sigma, false, 0, {}, {}};
    pool.offer(zero_subrep(rep));
    pool.offer(full_subrep(rep));
    {
        Subrep seeds = zero_subrep(rep);
        for (int v = 0; v < n; ++v)
            if (sigma[v] > 0) seeds.basis[v] = ExactMatrix::identity(rep.alpha[v]);
        pool.offer(closure_subrepresentation(rep, seeds));
        std::vector<std::optional<ExactMatrix>> bounds(n);
        for (int v = 0; v < n; ++v)
            if (sigma[v] < 0) bounds[v] = ExactMatrix(rep.alpha[v], 0);
        pool.offer(co_closure_subrepresentation(rep, bounds));
    }
    coordinate_candidates(rep, sigma, cfg.coordinate_budget_bits, pool);

    long nplus = weight_plus_total(sigma, rep.alpha);
    long nminus = weight_minus_total(sigma, rep.alpha);
    bool converged = false;
    static const double kDeltas[] = {1e-2, 1e-3, 1e-4};
    if (nplus > 0 && nminus > 0) {
        ScalingSetup setup;
        setup.plus = positive_vertices(sigma);
        setup.minus = negative_vertices(sigma);
        std::erase_if(setup.plus, [&](int v) { return rep.alpha[v] == 0; });
        std::erase_if(setup.minus, [&](int v) { return rep.alpha[v] == 0; });
        for (int s : setup.plus) {
            setup.in_weight.push_back(static_cast<double>(sigma[s]));
            setup.target_plus.push_back(1.0 / static_cast<double>(nplus));
        }
        for (int t : setup.minus) {
            setup.out_weight.push_back(static_cast<double>(-sigma[t]));
            setup.target_minus.push_back(1.0 / static_cast<double>(nminus));
        }
        setup.eps = cfg.scaling.epsilon_scale / (6.0 * static_cast<double>(std::max(nplus, nminus)));
        setup.max_iterations = scaling_iteration_bound(rep, sigma, cfg.scaling);
        setup.checkpoint_every = cfg.scaling.checkpoint_every;

        ScalingEngine engine(rep, setup);
        long stale = 0;
        auto signature = [&] {
            return std::make_tuple(pool.best, pool.has ? pool.meet.total_dim() : -1,
                                   pool.has ? pool.join.total_dim() : -1);
        };
        auto harvest = [&](ScalingEngine& e) {
            auto before = signature();
            propose_from_engine(rep, e, kDeltas, 3, cfg.scaling.round_den, [&](Subrep&& w) {
                pool.offer(std::move(w));
                return false;
            });
            stale = signature() == before ? stale + 1 : 0;
            // An exact positive witness decides instability; stop once the
            // proposals have settled. A balanced run may still be heading to
            // convergence, so only a positive pool cuts it short.
            return stale >= 20 && pool.best > 0;
        };
        try {
            ScalingOutcome oc = engine.run(harvest);
            converged = oc == ScalingOutcome::converged;
            harvest(engine);
        } catch (const numerical_error&) {
            // Keep whatever the pool gathered; the maximizer is best-effort
            // here and every kept candidate was verified exactly.
        }
    }

    if (balanced && converged && pool.best <= 0) {
        // Certified semistable: zero and full are the true extreme maximizers.
        Subrep w = want_max ? full_subrep(rep) : zero_subrep(rep);
        return finish(rep, sigma, std::move(w), 0, true, MaximizerMethod::propose_verify);
    }
    Subrep w = want_max ? pool.join : pool.meet;
    return finish(rep, sigma, std::move(w), pool.best, false, MaximizerMethod::propose_verify);
}

KingMaximizer maximizer_impl(const Representation& rep, const Weight& sigma, bool want_max,
                             const KingConfig& cfg, bool balanced) {
    if (auto r = sign_uniform(rep, sigma, want_max)) return *r;

    bool alpha_small = true;
    for (int v = 0; v < rep.quiver.num_vertices(); ++v)
        if (rep.alpha[v] > 1) alpha_small = false;
    if (alpha_small) {
        try {
            return alpha_one_path(rep, sigma, want_max, cfg.lowerset_limit);
        } catch (const std::domain_error&) {
            // lattice too large; fall through to propose-and-verify
        }
    } else {
        bool rank_one_class = true;
        for (int a = 0; a < rep.quiver.num_arcs(); ++a) {
            const ExactMatrix& m = rep.mat(a);
            if (!m.is_zero() && exact_rank(m) != 1) rank_one_class = false;
        }
        if (rank_one_class) {
            try {
                return rank_one_path(rep, sigma, want_max, cfg.lowerset_limit);
            } catch (const std::domain_error&) {
                // lattice too large; fall through to propose-and-verify
            }
        }
    }
    return general_path(rep, sigma, want_max, cfg, balanced);
}

}  // namespace

std::pair<BlockSet, BlockSet> phi_sigma_marginals(const Representation& rep,
                                                  const Weight& sigma) {
    require_valid(rep, "king");
    check_sigma(rep, sigma, "phi_sigma_marginals");
    require_acyclic(rep.quiver, "phi_sigma_marginals");
    FloatRep frep = to_float(rep);
    std::vector<int> plus = positive_vertices(sigma), minus = negative_vertices(sigma);
    std::vector<double> wplus, wminus;
    for (int s : plus) wplus.push_back(static_cast<double>(sigma[s]));
    for (int t : minus) wminus.push_back(static_cast<double>(-sigma[t]));
    BlockSet left = apply_phi(rep, frep, weighted_identity_blocks(rep, plus, wplus), minus);
    BlockSet right = apply_phi_dual(rep, frep, weighted_identity_blocks(rep, minus, wminus), plus);
    return {left, right};
}

KingMaximizer min_maximizer(const Representation& rep, const Weight& sigma,
                            const KingConfig& cfg) {
    require_valid(rep, "king");
    check_sigma(rep, sigma, "min_maximizer");
    require_acyclic(rep.quiver, "min_maximizer");
    if (weight_total(sigma, rep.alpha) != 0)
        throw weight_infeasible_error("min_maximizer: sigma(alpha) != 0");
    return maximizer_impl(rep, sigma, false, cfg, true);
}

KingMaximizer max_maximizer(const Representation& rep, const Weight& sigma,
                            const KingConfig& cfg) {
    require_valid(rep, "king");
    check_sigma(rep, sigma, "max_maximizer");
    require_acyclic(rep.quiver, "max_maximizer");
    if (weight_total(sigma, rep.alpha) != 0)
        throw weight_infeasible_error("max_maximizer: sigma(alpha) != 0");
    return maximizer_impl(rep, sigma, true, cfg, true);
}

KingMaximizer maximizer_unbalanced(const Representation& rep, const Weight& sigma, bool want_max,
                                   const KingConfig& cfg) {
    require_valid(rep, "king");
    check_sigma(rep, sigma, "maximizer_unbalanced");
    require_acyclic(rep.quiver, "maximizer_unbalanced");
    return maximizer_impl(rep, sigma, want_max, cfg,
                          weight_total(sigma, rep.alpha) == 0);
}

}  // namespace qss
