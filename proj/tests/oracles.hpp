#pragma once

// Cross-checking support for the test suite: deliberately naive
// recomputations (path enumeration, subset brute force, polynomial
// expansion) plus seeded instance generators. Nothing here calls the
// algorithm it is used to check; shared ground is limited to the exact
// linear-algebra primitives, which have their own tests.

#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qss/exact_matrix.hpp"
#include "qss/ncpit.hpp"
#include "qss/representation.hpp"
#include "qss/subrep.hpp"

namespace oracle {

using qss::Arc;
using qss::DimVector;
using qss::ExactMatrix;
using qss::GaussianRational;
using qss::Quiver;
using qss::Rational;
using qss::Representation;
using qss::Subrep;
using qss::Weight;

// ---------------------------------------------------------------------------
// builders

inline GaussianRational gi(long re, long im = 0) {
    return GaussianRational(Rational(re), Rational(im));
}

inline ExactMatrix mat(int rows, int cols, const std::vector<long>& entries) {
    ExactMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = gi(entries[static_cast<size_t>(r) * cols + c]);
    return m;
}

struct ArcSpec {
    std::string id, tail, head;
};

inline Representation make_rep(const std::vector<std::string>& verts,
                               const std::vector<ArcSpec>& arcs, DimVector alpha,
                               std::vector<ExactMatrix> mats) {
    Representation rep;
    for (const auto& v : verts) rep.quiver.add_vertex(v);
    for (const auto& a : arcs)
        rep.quiver.add_arc(a.id, rep.quiver.vertex_index(a.tail), rep.quiver.vertex_index(a.head));
    rep.alpha = std::move(alpha);
    rep.mats = std::move(mats);
    return rep;
}

// Vertex-set view of subrepresentations, exact on alpha == 1 instances.
inline Subrep subrep_of_set(const Representation& rep, const std::vector<char>& members) {
    Subrep w = qss::zero_subrep(rep);
    for (size_t v = 0; v < members.size(); ++v)
        if (members[v]) w.basis[v] = ExactMatrix::identity(rep.alpha[v]);
    return w;
}

inline std::vector<char> set_of_subrep(const Subrep& w) {
    std::vector<char> members(w.basis.size(), 0);
    for (size_t v = 0; v < w.basis.size(); ++v) members[v] = w.basis[v].cols() > 0 ? 1 : 0;
    return members;
}

// ---------------------------------------------------------------------------
// seeded generators

inline long rand_long(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

inline GaussianRational rand_entry(std::mt19937_64& rng, long bound, bool complex_ok = true) {
    long re = rand_long(rng, -bound, bound);
    long im = complex_ok && rand_long(rng, 0, 3) == 0 ? rand_long(rng, -bound, bound) : 0;
    return gi(re, im);
}

inline ExactMatrix rand_matrix(std::mt19937_64& rng, int rows, int cols, long bound,
                               bool complex_ok = true) {
    ExactMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = rand_entry(rng, bound, complex_ok);
    return m;
}

inline ExactMatrix rand_nonzero(std::mt19937_64& rng, int rows, int cols, long bound,
                                bool complex_ok = true) {
    while (true) {
        ExactMatrix m = rand_matrix(rng, rows, cols, bound, complex_ok);
        if (!m.is_zero()) return m;
    }
}

// Entries in {0, +-1, +-i}; used as the left factor of a rank-one product so
// the product entries stay within the bound of the right factor.
inline ExactMatrix rand_unit_column(std::mt19937_64& rng, int n) {
    while (true) {
        ExactMatrix m(n, 1);
        bool nonzero = false;
        for (int r = 0; r < n; ++r) {
            switch (rand_long(rng, 0, 5)) {
                case 0: m.at(r, 0) = gi(1); break;
                case 1: m.at(r, 0) = gi(-1); break;
                case 2: m.at(r, 0) = gi(0, 1); break;
                default: break;
            }
            if (!m.at(r, 0).is_zero()) nonzero = true;
        }
        if (nonzero) return m;
    }
}

inline Representation rand_acyclic_rep(std::mt19937_64& rng, int max_v, int max_arcs, int max_dim,
                                       long bound) {
    int nv = static_cast<int>(rand_long(rng, 2, max_v));
    Representation rep;
    for (int v = 0; v < nv; ++v) rep.quiver.add_vertex(std::to_string(v + 1));
    for (int v = 0; v < nv; ++v) rep.alpha.push_back(static_cast<int>(rand_long(rng, 1, max_dim)));
    int na = static_cast<int>(rand_long(rng, 1, max_arcs));
    for (int a = 0; a < na; ++a) {
        int tail = static_cast<int>(rand_long(rng, 0, nv - 2));
        int head = static_cast<int>(rand_long(rng, tail + 1, nv - 1));
        rep.quiver.add_arc("a" + std::to_string(a + 1), tail, head);
        rep.mats.push_back(rand_matrix(rng, rep.alpha[head], rep.alpha[tail], bound));
    }
    return rep;
}

inline Representation rand_rank_one_rep(std::mt19937_64& rng, int max_v, int max_arcs, int max_dim,
                                        long bound) {
    int nv = static_cast<int>(rand_long(rng, 2, max_v));
    Representation rep;
    for (int v = 0; v < nv; ++v) rep.quiver.add_vertex(std::to_string(v + 1));
    for (int v = 0; v < nv; ++v) rep.alpha.push_back(static_cast<int>(rand_long(rng, 1, max_dim)));
    int na = static_cast<int>(rand_long(rng, 1, max_arcs));
    for (int a = 0; a < na; ++a) {
        int tail = static_cast<int>(rand_long(rng, 0, nv - 2));
        int head = static_cast<int>(rand_long(rng, tail + 1, nv - 1));
        rep.quiver.add_arc("a" + std::to_string(a + 1), tail, head);
        rep.mats.push_back(rand_unit_column(rng, rep.alpha[head]) *
                           rand_nonzero(rng, 1, rep.alpha[tail], bound));
    }
    return rep;
}

inline std::optional<Weight> rand_balanced_weight(std::mt19937_64& rng, const DimVector& alpha,
                                                  long mag) {
    int n = static_cast<int>(alpha.size());
    for (int attempt = 0; attempt < 400; ++attempt) {
        Weight s(n, 0);
        long total = 0;
        bool nonzero = false;
        for (int v = 0; v < n; ++v) {
            s[v] = rand_long(rng, -mag, mag);
            total += s[v] * alpha[v];
            if (s[v] != 0) nonzero = true;
        }
        if (total == 0 && nonzero) return s;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (alpha[u] > 0 && alpha[v] > 0 && alpha[u] <= mag && alpha[v] <= mag) {
                Weight s(n, 0);
                s[u] = alpha[v];
                s[v] = -alpha[u];
                return s;
            }
    return std::nullopt;
}

inline void for_each_balanced_weight(const DimVector& alpha, long mag,
                                     const std::function<void(const Weight&)>& visit) {
    int n = static_cast<int>(alpha.size());
    Weight s(n, 0);
    std::function<void(int, long)> go = [&](int v, long total) {
        if (v == n) {
            if (total == 0) visit(s);
            return;
        }
        for (long x = -mag; x <= mag; ++x) {
            s[v] = x;
            go(v + 1, total + x * alpha[v]);
        }
    };
    go(0, 0);
}

// ---------------------------------------------------------------------------
// completely positive map, by explicit path enumeration

inline void walk_paths(const Representation& rep, int start,
                       const std::function<void(int, const ExactMatrix&)>& visit) {
    std::function<void(int, const ExactMatrix&)> go = [&](int v, const ExactMatrix& prod) {
        visit(v, prod);
        for (int a : rep.quiver.out_arcs(v)) go(rep.quiver.arc(a).head, rep.mat(a) * prod);
    };
    go(start, ExactMatrix::identity(rep.alpha[start]));
}

inline std::vector<ExactMatrix> phi_by_paths(const Representation& rep,
                                             const std::vector<ExactMatrix>& seeds) {
    std::vector<ExactMatrix> out;
    for (int v = 0; v < rep.quiver.num_vertices(); ++v)
        out.emplace_back(rep.alpha[v], rep.alpha[v]);
    for (int u = 0; u < rep.quiver.num_vertices(); ++u)
        walk_paths(rep, u, [&](int v, const ExactMatrix& p) {
            out[v] = out[v] + p * seeds[u] * p.adjoint();
        });
    return out;
}

inline std::vector<ExactMatrix> phi_dual_by_paths(const Representation& rep,
                                                  const std::vector<ExactMatrix>& seeds) {
    std::vector<ExactMatrix> out;
    for (int v = 0; v < rep.quiver.num_vertices(); ++v)
        out.emplace_back(rep.alpha[v], rep.alpha[v]);
    for (int u = 0; u < rep.quiver.num_vertices(); ++u)
        walk_paths(rep, u, [&](int v, const ExactMatrix& p) {
            out[u] = out[u] + p.adjoint() * seeds[v] * p;
        });
    return out;
}

// ---------------------------------------------------------------------------
// lower sets by plain subset enumeration, closedness checked at the leaf

inline void brute_lower_sets(const std::vector<std::vector<int>>& succ,
                             const std::function<void(const std::vector<char>&)>& visit) {
    int n = static_cast<int>(succ.size());
    if (n > 24) throw std::invalid_argument("brute_lower_sets: ground set too large");
    std::vector<char> in(n, 0);
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        for (int i = 0; i < n; ++i) in[i] = static_cast<char>((mask >> i) & 1);
        bool closed = true;
        for (int i = 0; i < n && closed; ++i) {
            if (!in[i]) continue;
            for (int j : succ[i])
                if (!in[j]) {
                    closed = false;
                    break;
                }
        }
        if (closed) visit(in);
    }
}

inline std::vector<std::vector<int>> support_successors(const Representation& rep) {
    std::vector<std::vector<int>> succ(rep.quiver.num_vertices());
    for (int a = 0; a < rep.quiver.num_arcs(); ++a)
        if (!rep.mat(a).is_zero())
            succ[rep.quiver.arc(a).tail].push_back(rep.quiver.arc(a).head);
    return succ;
}

inline Quiver support_quiver(const Representation& rep) {
    Quiver q;
    for (const std::string& id : rep.quiver.vertex_ids()) q.add_vertex(id);
    for (int a = 0; a < rep.quiver.num_arcs(); ++a)
        if (!rep.mat(a).is_zero()) {
            const Arc& arc = rep.quiver.arc(a);
            q.add_arc(arc.id, arc.tail, arc.head);
        }
    return q;
}

// Max of sigma(dimv W) over alpha == 1 subrepresentations, with every optimum.
struct AlphaOneOpt {
    long best = 0;
    std::vector<std::vector<char>> optima;
};

inline AlphaOneOpt alpha_one_max(const Representation& rep, const Weight& sigma) {
    AlphaOneOpt out;
    bool first = true;
    brute_lower_sets(support_successors(rep), [&](const std::vector<char>& in) {
        long val = 0;
        for (size_t v = 0; v < in.size(); ++v)
            if (in[v]) val += sigma[v] * rep.alpha[v];
        if (first || val > out.best) {
            out.best = val;
            out.optima.clear();
            first = false;
        }
        if (val == out.best) out.optima.push_back(in);
    });
    return out;
}

// ---------------------------------------------------------------------------
// rank-one brute force: own factorization (last nonzero pivot), own digraph,
// own W_X assembly

struct BruteRankOne {
    std::vector<ExactMatrix> v;          // alpha(head) x 1 per arc
    std::vector<ExactMatrix> f;          // 1 x alpha(tail) per arc
    std::vector<std::vector<int>> succ;  // node 2a = f_a, node 2a + 1 = v_a
};

inline BruteRankOne brute_factorize(const Representation& rep) {
    BruteRankOne out;
    int na = rep.quiver.num_arcs();
    for (int a = 0; a < na; ++a) {
        const ExactMatrix& m = rep.mat(a);
        int pr = -1, pc = -1;
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c)
                if (!m.at(r, c).is_zero()) {
                    pr = r;
                    pc = c;
                }
        if (pr < 0) throw std::invalid_argument("brute_factorize: zero matrix");
        ExactMatrix vcol(m.rows(), 1), frow(1, m.cols());
        for (int r = 0; r < m.rows(); ++r) vcol.at(r, 0) = m.at(r, pc);
        for (int c = 0; c < m.cols(); ++c) frow.at(0, c) = m.at(pr, c) / m.at(pr, pc);
        out.v.push_back(std::move(vcol));
        out.f.push_back(std::move(frow));
    }
    out.succ.assign(static_cast<size_t>(2) * na, {});
    for (int a = 0; a < na; ++a) out.succ[2 * a].push_back(2 * a + 1);
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) {
            if (rep.quiver.arc(a).head != rep.quiver.arc(b).tail) continue;
            GaussianRational dot;
            for (int k = 0; k < out.v[a].rows(); ++k)
                dot += out.f[b].at(0, k) * out.v[a].at(k, 0);
            if (!dot.is_zero()) out.succ[2 * a + 1].push_back(2 * b);
        }
    return out;
}

inline long brute_lhs(const Representation& rep, const BruteRankOne& r1, const Weight& sigma,
                      const std::vector<char>& in_x) {
    long lhs = 0;
    for (int i = 0; i < rep.quiver.num_vertices(); ++i) {
        if (sigma[i] > 0) {
            ExactMatrix rows(0, rep.alpha[i]);
            for (int a : rep.quiver.out_arcs(i))
                if (!in_x[2 * a]) rows = qss::vstack(rows, r1.f[a]);
            lhs += sigma[i] * qss::exact_rank(rows);
        } else if (sigma[i] < 0) {
            ExactMatrix cols(rep.alpha[i], 0);
            for (int a : rep.quiver.in_arcs(i))
                if (in_x[2 * a + 1]) cols = qss::hstack(cols, r1.v[a]);
            lhs += -sigma[i] * qss::exact_rank(cols);
        }
    }
    return lhs;
}

struct RankOneOpt {
    long sigma_plus_total = 0;
    long best_lhs = 0;  // min over lower sets of the two-matroid rank sum
    std::vector<std::vector<char>> optima;
};

inline RankOneOpt brute_rank_one_min(const Representation& rep, const BruteRankOne& r1,
                                     const Weight& sigma) {
    RankOneOpt out;
    for (int v = 0; v < rep.quiver.num_vertices(); ++v)
        if (sigma[v] > 0) out.sigma_plus_total += sigma[v] * rep.alpha[v];
    bool first = true;
    brute_lower_sets(r1.succ, [&](const std::vector<char>& in) {
        long lhs = brute_lhs(rep, r1, sigma, in);
        if (first || lhs < out.best_lhs) {
            out.best_lhs = lhs;
            out.optima.clear();
            first = false;
        }
        if (lhs == out.best_lhs) out.optima.push_back(in);
    });
    return out;
}

// W_X: kernels of the out-functionals outside X where sigma >= 0, spans of
// the in-vectors inside X where sigma < 0. Always a subrepresentation, of
// value sigma_plus_total - LHS(X).
inline Subrep brute_wx(const Representation& rep, const BruteRankOne& r1, const Weight& sigma,
                       const std::vector<char>& in_x) {
    Subrep w = qss::zero_subrep(rep);
    for (int i = 0; i < rep.quiver.num_vertices(); ++i) {
        if (sigma[i] >= 0) {
            ExactMatrix rows(0, rep.alpha[i]);
            for (int a : rep.quiver.out_arcs(i))
                if (!in_x[2 * a]) rows = qss::vstack(rows, r1.f[a]);
            w.basis[i] = qss::exact_kernel(rows);
        } else {
            ExactMatrix cols(rep.alpha[i], 0);
            for (int a : rep.quiver.in_arcs(i))
                if (in_x[2 * a + 1]) cols = qss::hstack(cols, r1.v[a]);
            w.basis[i] = qss::column_span_basis(cols);
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// alpha == 1 principal partition

struct BruteHN {
    std::vector<std::vector<char>> chain;  // starts empty, ends at full support reach
    std::vector<Rational> criticals;
    std::vector<Rational> slopes;
};

inline BruteHN brute_hn_alpha_one(const Representation& rep, const Weight& sigma,
                                  const Weight& tau) {
    const int n = rep.quiver.num_vertices();
    std::vector<std::vector<char>> sets;
    brute_lower_sets(support_successors(rep),
                     [&](const std::vector<char>& in) { sets.push_back(in); });

    long sp = 0, sm = 0, tt = 0;
    for (int v = 0; v < n; ++v) {
        long sv = sigma[v] * rep.alpha[v];
        if (sv > 0) sp += sv;
        if (sv < 0) sm += -sv;
        tt += tau[v] * rep.alpha[v];
    }
    std::set<Rational> cand;
    for (long p = -sm; p <= sp; ++p)
        for (long q = 1; q <= tt; ++q) {
            Rational r{mpz_class(p), mpz_class(q)};
            r.canonicalize();
            cand.insert(r);
        }

    BruteHN out;
    std::vector<char> cur(n, 0);
    for (auto it = cand.rbegin(); it != cand.rend(); ++it) {
        long p = it->get_num().get_si();
        long q = it->get_den().get_si();
        long best = LONG_MIN;
        std::vector<char> uni(n, 0);
        for (const auto& in : sets) {
            long g = 0;
            for (int v = 0; v < n; ++v)
                if (in[v]) g += (q * sigma[v] - p * tau[v]) * rep.alpha[v];
            if (g > best) {
                best = g;
                uni.assign(n, 0);
            }
            if (g == best)
                for (int v = 0; v < n; ++v)
                    if (in[v]) uni[v] = 1;
        }
        bool grows = false, contains = true;
        for (int v = 0; v < n; ++v) {
            if (cur[v] && !uni[v]) contains = false;
            if (uni[v] && !cur[v]) grows = true;
        }
        if (!contains || !grows) continue;
        long ds = 0, dt = 0;
        for (int v = 0; v < n; ++v)
            if (uni[v] && !cur[v]) {
                ds += sigma[v] * rep.alpha[v];
                dt += tau[v] * rep.alpha[v];
            }
        if (dt == 0) continue;
        Rational mu{mpz_class(ds), mpz_class(dt)};
        mu.canonicalize();
        out.chain.push_back(uni);
        out.criticals.push_back(*it);
        out.slopes.push_back(mu);
        cur = uni;
    }
    return out;
}

// ---------------------------------------------------------------------------
// coarse DM extreme points over coordinate subspace pairs

inline std::vector<std::pair<int, int>> dm_extreme_flags(const std::vector<ExactMatrix>& mats) {
    const int rows = mats.front().rows();
    const int cols0 = mats.front().cols();
    std::vector<int> kept;
    for (int j = 0; j < cols0; ++j) {
        bool zero = true;
        for (const ExactMatrix& m : mats)
            for (int i = 0; i < rows && zero; ++i)
                if (!m.at(i, j).is_zero()) zero = false;
        if (!zero) kept.push_back(j);
    }
    const int cols = static_cast<int>(kept.size());
    if (rows > 20 || cols > 20) throw std::invalid_argument("dm_extreme_flags: too large");

    std::vector<unsigned long> zrow(rows, 0);
    for (int i = 0; i < rows; ++i)
        for (int jj = 0; jj < cols; ++jj) {
            bool z = true;
            for (const ExactMatrix& m : mats)
                if (!m.at(i, kept[jj]).is_zero()) z = false;
            if (z) zrow[i] |= 1ul << jj;
        }

    std::vector<int> besty(rows + 1, -1);
    for (unsigned long mask = 0; mask < (1ul << rows); ++mask) {
        unsigned long inter = cols == 0 ? 0 : (1ul << cols) - 1;
        int x = 0;
        for (int i = 0; i < rows; ++i)
            if ((mask >> i) & 1) {
                inter &= zrow[i];
                ++x;
            }
        int y = 0;
        for (unsigned long b = inter; b != 0; b >>= 1) y += static_cast<int>(b & 1);
        if (y > besty[x]) besty[x] = y;
    }

    // Upper hull over (dim X, dim Y); strict corners only.
    std::vector<std::pair<int, int>> hull;
    for (int x = 0; x <= rows; ++x) {
        std::pair<int, int> p{x, besty[x]};
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            long cross = static_cast<long>(b.first - a.first) * (p.second - a.second) -
                         static_cast<long>(b.second - a.second) * (p.first - a.first);
            if (cross >= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;  // dim X ascending, dim Y descending
}

// ---------------------------------------------------------------------------
// closed-walk trace oracle for general quivers

struct WalkVerdict {
    bool semistable = false;
    bool exhausted = false;
};

inline WalkVerdict walk_semistable(const Representation& rep, long budget) {
    long total = 0;
    for (int v = 0; v < rep.quiver.num_vertices(); ++v) total += rep.alpha[v];
    const long kmax = total * total;
    WalkVerdict out;
    long used = 0;
    std::function<bool(int, int, const ExactMatrix&, long)> go =
        [&](int start, int v, const ExactMatrix& prod, long len) -> bool {
        for (int a : rep.quiver.out_arcs(v)) {
            if (++used > budget) {
                out.exhausted = true;
                return true;
            }
            ExactMatrix q = rep.mat(a) * prod;
            if (q.is_zero()) continue;
            int h = rep.quiver.arc(a).head;
            if (h == start) {
                GaussianRational tr;
                for (int i = 0; i < q.rows(); ++i) tr += q.at(i, i);
                if (!tr.is_zero()) {
                    out.semistable = true;
                    return true;
                }
            }
            if (len + 1 < kmax && go(start, h, q, len + 1)) return true;
        }
        return false;
    };
    for (int s = 0; s < rep.quiver.num_vertices(); ++s) {
        if (rep.alpha[s] == 0) continue;
        if (go(s, s, ExactMatrix::identity(rep.alpha[s]), 0)) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// ABP by monomial expansion

inline bool abp_zero_by_expansion(const qss::ABP& abp) {
    std::vector<std::vector<std::pair<int, const qss::LinearForm*>>> out(abp.num_vertices);
    for (const auto& arc : abp.arcs) out[arc.from].push_back({arc.to, &arc.label});
    std::map<std::vector<int>, GaussianRational> coeff;
    std::vector<int> mono;
    std::function<void(int, const GaussianRational&)> go = [&](int v, const GaussianRational& c) {
        if (v == abp.sink()) {
            coeff[mono] += c;
            return;
        }
        for (const auto& next : out[v])
            for (const auto& term : next.second->terms) {
                mono.push_back(term.first);
                go(next.first, c * term.second);
                mono.pop_back();
            }
    };
    if (abp.source() != abp.sink()) go(abp.source(), GaussianRational(1));
    for (const auto& kv : coeff)
        if (!kv.second.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// general (possibly cyclic) random representations

inline Representation rand_general_rep(std::mt19937_64& rng, int max_v, int max_total_alpha,
                                       long mag) {
    Representation rep;
    int n = static_cast<int>(rand_long(rng, 1, max_v));
    for (int v = 0; v < n; ++v) rep.quiver.add_vertex(std::to_string(v + 1));
    rep.alpha.assign(n, 0);
    int total = static_cast<int>(rand_long(rng, 1, max_total_alpha));
    for (int i = 0; i < total; ++i) ++rep.alpha[rand_long(rng, 0, n - 1)];
    int arcs = 0;
    for (int t = 0; t < n; ++t)
        for (int h = 0; h < n; ++h) {
            int parallel = static_cast<int>(rand_long(rng, 0, 2));
            for (int k = 0; k < parallel; ++k) {
                rep.quiver.add_arc("a" + std::to_string(++arcs), t, h);
                rep.mats.push_back(rand_matrix(rng, rep.alpha[h], rep.alpha[t], mag));
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// matroid corollaries

// Kronecker bundle, alpha = (n, n), sigma = (1, -1): semistable iff some
// n-subset of arcs stacks to full rank on both factor sides.
inline bool kronecker_common_base(const Representation& rep) {
    const BruteRankOne r1 = brute_factorize(rep);
    const int n = rep.alpha[0];
    const int m = rep.quiver.num_arcs();
    std::vector<int> pick;
    std::function<bool(int)> choose = [&](int from) -> bool {
        if (static_cast<int>(pick.size()) == n) {
            ExactMatrix vs(n, 0), fs(0, n);
            for (int a : pick) {
                vs = qss::hstack(vs, r1.v[a]);
                fs = qss::vstack(fs, r1.f[a]);
            }
            return qss::exact_rank(vs) == n && qss::exact_rank(fs) == n;
        }
        for (int a = from; a < m; ++a) {
            pick.push_back(a);
            if (choose(a + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (n == 0) return true;
    return choose(0);
}

// Base-polytope membership through the rank inequalities: p(E) = r(E) and
// p(S) <= r(S) for every S, tested exactly as d r(S) >= c(S).
inline bool star_base_polytope_member(const std::vector<ExactMatrix>& f_rows, long d,
                                      const std::vector<long>& c) {
    const int m = static_cast<int>(f_rows.size());
    const int n = f_rows.front().cols();
    auto rank_of = [&](unsigned long mask) {
        ExactMatrix st(0, n);
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1) st = qss::vstack(st, f_rows[i]);
        return qss::exact_rank(st);
    };
    long ctot = 0;
    for (long x : c) ctot += x;
    if (ctot != d * rank_of((1ul << m) - 1)) return false;
    for (unsigned long mask = 0; mask + 1 < (1ul << m); ++mask) {
        long cs = 0;
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1) cs += c[i];
        if (cs > d * rank_of(mask)) return false;
    }
    return true;
}

struct StarInstance {
    Representation rep;
    Weight sigma;
    long d = 1;
    std::vector<long> c;
};

inline StarInstance rand_star_instance(std::mt19937_64& rng, int max_n, int max_m) {
    StarInstance inst;
    int n = static_cast<int>(rand_long(rng, 1, max_n));
    int m = static_cast<int>(rand_long(rng, 1, max_m));
    inst.rep.quiver.add_vertex("r");
    inst.rep.alpha.push_back(n);
    std::vector<ExactMatrix> rows;
    for (int i = 0; i < m; ++i) {
        inst.rep.quiver.add_vertex("l" + std::to_string(i + 1));
        inst.rep.alpha.push_back(1);
        ExactMatrix f = i > 0 && rand_long(rng, 0, 3) == 0 ? rows[rand_long(rng, 0, i - 1)]
                                                           : rand_nonzero(rng, 1, n, 2);
        rows.push_back(f);
        inst.rep.quiver.add_arc("a" + std::to_string(i + 1), 0, i + 1);
        inst.rep.mats.push_back(f);
    }
    long d = rand_long(rng, 1, 3);
    while (d * n < m) ++d;
    inst.d = d;
    inst.c.assign(m, 1);
    for (long left = d * n - m; left > 0; --left) ++inst.c[rand_long(rng, 0, m - 1)];
    inst.sigma.push_back(d);
    for (int i = 0; i < m; ++i) inst.sigma.push_back(-inst.c[i]);
    return inst;
}

inline Representation rand_kronecker_rank_one(std::mt19937_64& rng, int n, int m) {
    Representation rep;
    rep.quiver.add_vertex("1");
    rep.quiver.add_vertex("2");
    rep.alpha = {n, n};
    std::vector<ExactMatrix> vs, fs;
    for (int a = 0; a < m; ++a) {
        vs.push_back(rand_unit_column(rng, n));
        fs.push_back(rand_nonzero(rng, 1, n, 2));
    }
    // Force factor-side degeneracies part of the time so unstable instances
    // show up with decent frequency.
    if (rand_long(rng, 0, 2) == 0 && m >= 2) {
        long k = rand_long(rng, 2, m);
        for (long a = 1; a < k; ++a) fs[a] = fs[0];
    }
    if (rand_long(rng, 0, 2) == 0 && m >= 2) {
        long k = rand_long(rng, 2, m);
        for (long a = 1; a < k; ++a) vs[a] = vs[0];
    }
    for (int a = 0; a < m; ++a) {
        rep.quiver.add_arc("a" + std::to_string(a + 1), 0, 1);
        rep.mats.push_back(vs[a] * fs[a]);
    }
    return rep;
}

}  // namespace oracle
