#include "qss/float_matrix.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace qss {

FloatMatrix FloatMatrix::identity(int n) {
    FloatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = cd(1.0, 0.0);
    return m;
}

FloatMatrix from_exact(const ExactMatrix& m) {
    FloatMatrix f(m.rows(), m.cols());
    f.d = m.to_complex();
    return f;
}

void gemm_nn_acc(FloatMatrix& c, const FloatMatrix& a, const FloatMatrix& b) {
    if (a.cols != b.rows || c.rows != a.rows || c.cols != b.cols)
        throw std::invalid_argument("gemm_nn shape mismatch");
    kernels::active().nn(c.d.data(), a.d.data(), b.d.data(), a.rows, a.cols, b.cols);
}

void gemm_nh_acc(FloatMatrix& c, const FloatMatrix& a, const FloatMatrix& b) {
    if (a.cols != b.cols || c.rows != a.rows || c.cols != b.rows)
        throw std::invalid_argument("gemm_nh shape mismatch");
    kernels::active().nh(c.d.data(), a.d.data(), b.d.data(), a.rows, a.cols, b.rows);
}

void gemm_hn_acc(FloatMatrix& c, const FloatMatrix& a, const FloatMatrix& b) {
    if (a.rows != b.rows || c.rows != a.cols || c.cols != b.cols)
        throw std::invalid_argument("gemm_hn shape mismatch");
    kernels::active().hn(c.d.data(), a.d.data(), b.d.data(), a.cols, a.rows, b.cols);
}

FloatMatrix mul_nn(const FloatMatrix& a, const FloatMatrix& b) {
    FloatMatrix c(a.rows, b.cols);
    gemm_nn_acc(c, a, b);
    return c;
}

FloatMatrix mul_nh(const FloatMatrix& a, const FloatMatrix& b) {
    FloatMatrix c(a.rows, b.rows);
    gemm_nh_acc(c, a, b);
    return c;
}

FloatMatrix mul_hn(const FloatMatrix& a, const FloatMatrix& b) {
    FloatMatrix c(a.cols, b.cols);
    gemm_hn_acc(c, a, b);
    return c;
}

double frobenius_norm(const FloatMatrix& m) {
    double s = 0.0;
    for (const cd& v : m.d) s += std::norm(v);
    return std::sqrt(s);
}

double trace_real(const FloatMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < std::min(m.rows, m.cols); ++i) s += m.at(i, i).real();
    return s;
}

bool has_non_finite(const FloatMatrix& m) {
    for (const cd& v : m.d)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return true;
    return false;
}

double hermitian_deviation(const FloatMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("hermitian_deviation: not square");
    double s = 0.0;
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) s += std::norm(m.at(r, c) - std::conj(m.at(c, r)));
    return std::sqrt(s);
}

void require_hermitian(const FloatMatrix& m, const char* where) {
    double dev = hermitian_deviation(m);
    double scale = frobenius_norm(m);
    if (dev > 1e-10 * std::max(scale, 1e-30) && dev > 1e-14)
        throw std::invalid_argument(std::string(where) + ": matrix is not Hermitian within tolerance");
}

CholeskyResult cholesky(const FloatMatrix& m, double rel_tol) {
    const int n = m.rows;
    CholeskyResult res;
    res.lower = FloatMatrix(n, n);
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += m.at(i, i).real();
    double floor_val = rel_tol * std::max(tr, 0.0);
    FloatMatrix& l = res.lower;
    for (int j = 0; j < n; ++j) {
        double diag = m.at(j, j).real();
        for (int k = 0; k < j; ++k) diag -= std::norm(l.at(j, k));
        if (!(diag > floor_val) || !std::isfinite(diag)) {
            res.ok = false;
            res.deficient_index = j;
            return res;
        }
        double ljj = std::sqrt(diag);
        l.at(j, j) = cd(ljj, 0.0);
        for (int i = j + 1; i < n; ++i) {
            cd v = m.at(i, j);
            for (int k = 0; k < j; ++k) v -= l.at(i, k) * std::conj(l.at(j, k));
            l.at(i, j) = v / ljj;
        }
    }
    res.ok = true;
    return res;
}

FloatMatrix lower_triangular_inverse(const FloatMatrix& l) {
    const int n = l.rows;
    FloatMatrix inv(n, n);
    for (int c = 0; c < n; ++c) {
        inv.at(c, c) = cd(1.0, 0.0) / l.at(c, c);
        for (int r = c + 1; r < n; ++r) {
            cd s(0.0, 0.0);
            for (int k = c; k < r; ++k) s += l.at(r, k) * inv.at(k, c);
            inv.at(r, c) = -s / l.at(r, r);
        }
    }
    return inv;
}

namespace {

Eigen::MatrixXcd to_eigen(const FloatMatrix& m) {
    Eigen::MatrixXcd e(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) e(r, c) = m.at(r, c);
    return e;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const FloatMatrix& m) {
    if (m.rows == 0) return {};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian eigensolve failed");
    std::vector<double> out(m.rows);
    for (int i = 0; i < m.rows; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

HermitianEig hermitian_eigensystem(const FloatMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian eigensolve failed");
    HermitianEig out;
    out.values.resize(m.rows);
    out.vectors = FloatMatrix(m.rows, m.rows);
    for (int i = 0; i < m.rows; ++i) out.values[i] = es.eigenvalues()(i);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.rows; ++c) out.vectors.at(r, c) = es.eigenvectors()(r, c);
    return out;
}

double trace_norm_distance(const FloatMatrix& a, const FloatMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols || a.rows != a.cols)
        throw std::invalid_argument("trace_norm_distance: square same-shape inputs required");
    require_hermitian(a, "trace_norm_distance(a)");
    require_hermitian(b, "trace_norm_distance(b)");
    FloatMatrix diff = a;
    for (size_t i = 0; i < diff.d.size(); ++i) diff.d[i] -= b.d[i];
    double s = 0.0;
    for (double lam : hermitian_eigenvalues(diff)) s += std::abs(lam);
    return s;
}

}  // namespace qss
