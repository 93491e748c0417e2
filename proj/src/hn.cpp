#include "qss/hn.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "qss/scaling.hpp"

namespace qss {

namespace {

void check_weight(const Representation& rep, const Weight& w, const char* name, const char* where) {
    if (static_cast<int>(w.size()) != rep.quiver.num_vertices()) {
        throw std::invalid_argument(std::string(where) + ": " + name + " must assign one entry per vertex");
    }
}

}  // namespace

Weight slope_to_weight(const Weight& sigma, const Weight& tau, long p, long q) {
    if (q <= 0) throw std::invalid_argument("slope_to_weight: denominator q must be positive");
    if (sigma.size() != tau.size()) {
        throw std::invalid_argument("slope_to_weight: sigma and tau must have equal length");
    }
    Weight out(sigma.size());
    for (size_t i = 0; i < sigma.size(); ++i) out[i] = q * sigma[i] - p * tau[i];
    return out;
}

HNFiltration hn_filtration(const Representation& rep, const Weight& sigma, const Weight& tau,
                           bool relaxed_tau, const KingConfig& cfg) {
    require_valid(rep, "hn_filtration");
    check_weight(rep, sigma, "sigma", "hn_filtration");
    check_weight(rep, tau, "tau", "hn_filtration");
    require_acyclic(rep.quiver, "hn_filtration");

    int n = rep.quiver.num_vertices();
    for (int v = 0; v < n; ++v) {
        if (tau[v] < 0) throw std::invalid_argument("hn_filtration: tau must be nonnegative");
        if (!relaxed_tau && rep.alpha[v] > 0 && tau[v] == 0) {
            throw std::invalid_argument(
                "hn_filtration: tau vanishes on vertex '" + rep.quiver.vertex_id(v) +
                "' which carries dimension; pass relaxed_tau to allow this");
        }
    }

    HNFiltration out;
    out.chain.push_back(zero_subrep(rep));
    if (rep.total_dim() == 0) return out;

    long tau_total = weight_total(tau, rep.alpha);
    if (tau_total <= 0) {
        throw std::invalid_argument("hn_filtration: tau(alpha) must be positive");
    }
    long p_hi = weight_plus_total(sigma, rep.alpha);
    long p_lo = -weight_minus_total(sigma, rep.alpha);

    // Candidate slopes p/q in lowest terms; every quotient slope sigma(d)/tau(d)
    // lies in this grid, so sweeping it top-down visits each critical value
    // exactly once.
    std::set<Rational> candidates;
    for (long p = p_lo; p <= p_hi; ++p) {
        for (long q = 1; q <= tau_total; ++q) {
            Rational r{mpz_class(p), mpz_class(q)};
            r.canonicalize();
            candidates.insert(r);
        }
    }

    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
        long p = it->get_num().get_si();
        long q = it->get_den().get_si();
        KingMaximizer km = maximizer_unbalanced(rep, slope_to_weight(sigma, tau, p, q), true, cfg);

        const Subrep& last = out.chain.back();
        if (km.w.total_dim() <= last.total_dim()) continue;
        if (!subrep_contains(km.w, last)) continue;

        DimVector prev = subrep_dims(last);
        DimVector next = subrep_dims(km.w);
        long ds = 0, dt = 0;
        for (int v = 0; v < n; ++v) {
            ds += sigma[v] * (next[v] - prev[v]);
            dt += tau[v] * (next[v] - prev[v]);
        }
        if (dt == 0) continue;  // a step of tau-mass zero cannot carry a finite slope

        Rational mu{mpz_class(ds), mpz_class(dt)};
        mu.canonicalize();
        out.chain.push_back(std::move(km.w));
        out.slopes.push_back(std::move(mu));
        out.criticals.push_back(*it);
    }

    if (!subrep_equal(out.chain.back(), full_subrep(rep))) {
        throw numerical_error("hn_filtration: slope sweep did not reach the full representation");
    }
    return out;
}

Representation quotient_representation(const Representation& rep, const Subrep& inner,
                                       const Subrep& outer) {
    require_valid(rep, "quotient_representation");
    int n = rep.quiver.num_vertices();
    if (static_cast<int>(inner.basis.size()) != n || static_cast<int>(outer.basis.size()) != n) {
        throw std::invalid_argument("quotient_representation: subrepresentation size mismatch");
    }
    if (!is_subrepresentation(rep, inner) || !is_subrepresentation(rep, outer)) {
        throw std::invalid_argument("quotient_representation: arguments must be subrepresentations");
    }
    if (!subrep_contains(outer, inner)) {
        throw std::invalid_argument("quotient_representation: inner must be contained in outer");
    }

    // Per vertex, extend the inner basis to the outer one; the added columns
    // are the complement carrying the quotient coordinates.
    std::vector<ExactMatrix> comp(n), frame(n);
    Representation quot;
    quot.quiver = rep.quiver;
    quot.alpha.assign(n, 0);
    for (int v = 0; v < n; ++v) {
        ExactMatrix b = inner.basis[v];
        ExactMatrix c(rep.alpha[v], 0);
        for (int j = 0; j < outer.basis[v].cols(); ++j) {
            ExactMatrix col(rep.alpha[v], 1);
            for (int i = 0; i < rep.alpha[v]; ++i) col.at(i, 0) = outer.basis[v].at(i, j);
            if (span_contains(b, col)) continue;
            b = hstack(b, col);
            c = hstack(c, col);
        }
        frame[v] = std::move(b);
        quot.alpha[v] = c.cols();
        comp[v] = std::move(c);
    }

    quot.mats.reserve(rep.quiver.num_arcs());
    for (int a = 0; a < rep.quiver.num_arcs(); ++a) {
        const Arc& arc = rep.quiver.arc(a);
        ExactMatrix img = rep.mat(a) * comp[arc.tail];
        int skip = inner.basis[arc.head].cols();
        ExactMatrix qm(quot.alpha[arc.head], img.cols());
        for (int j = 0; j < img.cols(); ++j) {
            ExactMatrix col(img.rows(), 1);
            for (int i = 0; i < img.rows(); ++i) col.at(i, 0) = img.at(i, j);
            ExactMatrix coef;
            if (!exact_solve(frame[arc.head], col, coef)) {
                throw std::logic_error(
                    "quotient_representation: arc image escaped the outer subspace");
            }
            for (int i = 0; i < qm.rows(); ++i) qm.at(i, j) = coef.at(skip + i, 0);
        }
        quot.mats.push_back(std::move(qm));
    }
    return quot;
}

CoarseDM coarse_dm(const std::vector<ExactMatrix>& matrices, const KingConfig& cfg) {
    if (matrices.empty()) throw std::invalid_argument("coarse_dm: need at least one matrix");
    int rows = matrices[0].rows();
    int cols = matrices[0].cols();
    for (const ExactMatrix& m : matrices) {
        if (m.rows() != rows || m.cols() != cols) {
            throw std::invalid_argument("coarse_dm: matrices must share one shape");
        }
    }
    if (rows == 0) throw std::invalid_argument("coarse_dm: matrices must have at least one row");

    CoarseDM out;
    for (int j = 0; j < cols; ++j) {
        bool zero = true;
        for (const ExactMatrix& m : matrices) {
            for (int i = 0; i < rows && zero; ++i) zero = m.at(i, j).is_zero();
            if (!zero) break;
        }
        if (!zero) out.kept_columns.push_back(j);
    }
    if (out.kept_columns.empty()) {
        throw std::invalid_argument("coarse_dm: every column is zero in every matrix");
    }

    Representation& kron = out.kron;
    int src = kron.quiver.add_vertex("1");
    int dst = kron.quiver.add_vertex("2");
    kron.alpha = {static_cast<int>(out.kept_columns.size()), rows};
    for (size_t k = 0; k < matrices.size(); ++k) {
        kron.quiver.add_arc("a" + std::to_string(k + 1), src, dst);
        ExactMatrix m(rows, kron.alpha[src]);
        for (int j = 0; j < m.cols(); ++j) {
            for (int i = 0; i < rows; ++i) m.at(i, j) = matrices[k].at(i, out.kept_columns[j]);
        }
        kron.mats.push_back(std::move(m));
    }

    out.filtration = hn_filtration(kron, Weight{1, 0}, Weight{0, 1}, true, cfg);
    out.blocks = static_cast<int>(out.filtration.chain.size()) - 1;

    for (const Subrep& w : out.filtration.chain) {
        const ExactMatrix& y = w.basis[src];
        ExactMatrix image(rows, 0);
        for (const ExactMatrix& m : kron.mats) image = hstack(image, m * y);
        out.y_flags.push_back(y);
        out.x_flags.push_back(orthogonal_complement(column_span_basis(image)));
    }
    return out;
}

}  // namespace qss
