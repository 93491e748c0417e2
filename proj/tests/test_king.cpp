#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qss/king.hpp"

using namespace qss;
using oracle::make_rep;
using oracle::mat;

namespace {

bool set_matches_subrep(const Representation& rep, const std::vector<char>& in,
                        const Subrep& w) {
    for (int v = 0; v < rep.quiver.num_vertices(); ++v) {
        int want = in[v] ? rep.alpha[v] : 0;
        if (w.dim(v) != want) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("phi_sigma_marginals") {
    Representation rep = make_rep({"1", "2"}, {{"a", "1", "2"}}, {2, 2},
                                  {ExactMatrix::identity(2)});
    auto [left, right] = phi_sigma_marginals(rep, Weight{2, -2});
    REQUIRE(left.verts == std::vector<int>{1});
    REQUIRE(right.verts == std::vector<int>{0});
    for (int i = 0; i < 2; ++i) {
        CHECK(left.blocks[0].at(i, i).real() == doctest::Approx(2.0));
        CHECK(right.blocks[0].at(i, i).real() == doctest::Approx(2.0));
    }
    CHECK(std::abs(left.blocks[0].at(0, 1)) == doctest::Approx(0.0));

    Representation path = make_rep({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}},
                                   {1, 1, 1}, {mat(1, 1, {2}), mat(1, 1, {3})});
    auto [l2, r2] = phi_sigma_marginals(path, Weight{1, 0, -1});
    CHECK(l2.blocks[0].at(0, 0).real() == doctest::Approx(36.0));
    CHECK(r2.blocks[0].at(0, 0).real() == doctest::Approx(36.0));
}

TEST_CASE("pinned maximizers") {
    Representation rep = make_rep({"1", "2"}, {{"a", "1", "2"}}, {1, 1}, {mat(1, 1, {1})});
    Weight sigma{1, -1};
    KingMaximizer lo = min_maximizer(rep, sigma);
    CHECK(lo.value == 0);
    CHECK(lo.w.total_dim() == 0);
    CHECK(lo.minimal);
    KingMaximizer hi = max_maximizer(rep, sigma);
    CHECK(hi.value == 0);
    CHECK(hi.w.total_dim() == 2);

    Representation zero = make_rep({"1", "2"}, {{"a", "1", "2"}}, {2, 2},
                                   {ExactMatrix::zero(2, 2)});
    KingMaximizer z = min_maximizer(zero, sigma);
    CHECK(z.value == 2);
    CHECK(z.w.dim(0) == 2);
    CHECK(z.w.dim(1) == 0);
    CHECK(is_subrepresentation(zero, z.w));

    Representation chain = make_rep({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}},
                                    {1, 1, 1}, {mat(1, 1, {0}), mat(1, 1, {1})});
    KingMaximizer c = min_maximizer(chain, Weight{1, 0, -1});
    CHECK(c.value == 1);
    CHECK(c.w.dim(0) == 1);
    CHECK(c.w.dim(1) == 0);
    CHECK(c.w.dim(2) == 0);

    CHECK_THROWS_AS(min_maximizer(rep, Weight{1, 0}), weight_infeasible_error);
}

TEST_CASE("sign-uniform weights short-circuit") {
    Representation rep = make_rep({"1", "2"}, {{"a", "1", "2"}}, {2, 3},
                                  {mat(3, 2, {1, 0, 0, 1, 0, 0})});
    KingMaximizer up = maximizer_unbalanced(rep, Weight{1, 2}, true);
    CHECK(up.value == 2 + 6);
    CHECK(up.w.total_dim() == 5);
    CHECK(up.minimal);
    KingMaximizer upmin = maximizer_unbalanced(rep, Weight{1, 2}, false);
    CHECK(upmin.value == 2 + 6);
    CHECK(upmin.w.total_dim() == 5);
    CHECK(upmin.minimal);

    KingMaximizer mid = maximizer_unbalanced(rep, Weight{0, 2}, false);
    CHECK(mid.value == 6);
    CHECK(mid.w.dim(0) == 0);
    CHECK(mid.w.dim(1) == 3);
    KingMaximizer midmax = maximizer_unbalanced(rep, Weight{0, 2}, true);
    CHECK(midmax.value == 6);
    CHECK(midmax.w.total_dim() == 5);

    KingMaximizer dn = maximizer_unbalanced(rep, Weight{-1, -1}, true);
    CHECK(dn.value == 0);
    CHECK(dn.w.total_dim() == 0);
    KingMaximizer dnmin = maximizer_unbalanced(rep, Weight{-1, -1}, false);
    CHECK(dnmin.value == 0);
    CHECK(dnmin.w.total_dim() == 0);

    KingMaximizer hang = maximizer_unbalanced(rep, Weight{-1, 0}, true);
    CHECK(hang.value == 0);
    CHECK(hang.w.dim(0) == 0);
    CHECK(hang.w.dim(1) == 3);
}

TEST_CASE("alpha-one maximizers match the lattice brute force") {
    std::mt19937_64 rng(9301);
    int checked = 0;
    while (checked < 150) {
        Representation rep = oracle::rand_acyclic_rep(rng, 5, 6, 1, 1);
        std::optional<Weight> sigma = oracle::rand_balanced_weight(rng, rep.alpha, 3);
        if (!sigma) continue;
        ++checked;
        oracle::AlphaOneOpt opt = oracle::alpha_one_max(rep, *sigma);
        KingMaximizer lo = min_maximizer(rep, *sigma);
        KingMaximizer hi = max_maximizer(rep, *sigma);
        CHECK(lo.value == opt.best);
        CHECK(hi.value == opt.best);
        CHECK(lo.minimal);
        CHECK(hi.minimal);
        CHECK(is_subrepresentation(rep, lo.w));
        CHECK(is_subrepresentation(rep, hi.w));
        CHECK(king_value(*sigma, lo.w) == opt.best);
        CHECK(king_value(*sigma, hi.w) == opt.best);

        bool lo_found = false, hi_found = false;
        for (const std::vector<char>& in : opt.optima) {
            if (set_matches_subrep(rep, in, lo.w)) lo_found = true;
            if (set_matches_subrep(rep, in, hi.w)) hi_found = true;
            Subrep o = oracle::subrep_of_set(rep, in);
            CHECK(subrep_contains(o, lo.w));
            CHECK(subrep_contains(hi.w, o));
        }
        CHECK(lo_found);
        CHECK(hi_found);
    }
}

TEST_CASE("rank-one maximizer value matches the DV brute force") {
    std::mt19937_64 rng(9302);
    int checked = 0;
    while (checked < 60) {
        Representation rep = oracle::rand_rank_one_rep(rng, 4, 5, 3, 2);
        std::optional<Weight> sigma = oracle::rand_balanced_weight(rng, rep.alpha, 3);
        if (!sigma) continue;
        bool all_nonzero = true;
        for (int a = 0; a < rep.quiver.num_arcs(); ++a)
            if (rep.mat(a).is_zero()) all_nonzero = false;
        if (!all_nonzero) continue;
        ++checked;
        oracle::BruteRankOne br = oracle::brute_factorize(rep);
        oracle::RankOneOpt opt = oracle::brute_rank_one_min(rep, br, *sigma);
        long expect = opt.sigma_plus_total - opt.best_lhs;

        KingMaximizer lo = min_maximizer(rep, *sigma);
        CHECK(lo.value == expect);
        CHECK(is_subrepresentation(rep, lo.w));
        CHECK(king_value(*sigma, lo.w) == lo.value);
        KingMaximizer hi = max_maximizer(rep, *sigma);
        CHECK(hi.value == expect);
        CHECK(subrep_contains(hi.w, lo.w));
    }
}

TEST_CASE("general maximizers return verified candidates") {
    std::mt19937_64 rng(9303);
    int checked = 0, positive = 0;
    while (checked < 40) {
        Representation rep = oracle::rand_acyclic_rep(rng, 4, 5, 3, 2);
        std::optional<Weight> sigma = oracle::rand_balanced_weight(rng, rep.alpha, 2);
        if (!sigma) continue;
        ++checked;
        KingMaximizer lo, hi;
        try {
            lo = min_maximizer(rep, *sigma);
            hi = max_maximizer(rep, *sigma);
        } catch (const numerical_error&) {
            continue;
        }
        CHECK(is_subrepresentation(rep, lo.w));
        CHECK(is_subrepresentation(rep, hi.w));
        CHECK(king_value(*sigma, lo.w) == lo.value);
        CHECK(king_value(*sigma, hi.w) == hi.value);
        CHECK(lo.value == hi.value);
        CHECK(lo.value >= 0);
        CHECK(subrep_contains(hi.w, lo.w));
        if (lo.value > 0) ++positive;

        SsDecision d = decide_sigma_semistable(rep, *sigma);
        CHECK((d.verdict == SsVerdict::semistable) == (lo.value == 0));
    }
    CHECK(positive > 3);
}

TEST_CASE("maximizer_unbalanced handles slope weights") {
    Representation rep = make_rep({"1", "2"}, {{"a", "1", "2"}}, {1, 1}, {mat(1, 1, {0})});
    KingMaximizer m = maximizer_unbalanced(rep, Weight{1, -3}, true);
    CHECK(m.value == 1);
    CHECK(m.w.dim(0) == 1);
    CHECK(m.w.dim(1) == 0);
    KingMaximizer lo = maximizer_unbalanced(rep, Weight{1, -3}, false);
    CHECK(lo.value == 1);
    CHECK(lo.w.dim(0) == 1);
    CHECK(lo.w.dim(1) == 0);
    CHECK(lo.minimal);

    KingMaximizer tie_lo = maximizer_unbalanced(rep, Weight{1, 0}, false);
    CHECK(tie_lo.value == 1);
    CHECK(tie_lo.w.dim(0) == 1);
    CHECK(tie_lo.w.dim(1) == 0);
    KingMaximizer tie_hi = maximizer_unbalanced(rep, Weight{1, 0}, true);
    CHECK(tie_hi.value == 1);
    CHECK(tie_hi.w.dim(0) == 1);
    CHECK(tie_hi.w.dim(1) == 1);
}
