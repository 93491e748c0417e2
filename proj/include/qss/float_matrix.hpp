#pragma once

#include <complex>
#include <vector>

#include "qss/exact_matrix.hpp"
#include "qss/kernels.hpp"

namespace qss {

using cd = std::complex<double>;

// Dense complex matrix, row-major. Floats are transient working data: inputs
// come from exact matrices and anything that must be trusted is re-verified
// exactly by the callers.
struct FloatMatrix {
    int rows = 0, cols = 0;
    std::vector<cd> d;

    FloatMatrix() = default;
    FloatMatrix(int r, int c) : rows(r), cols(c), d(static_cast<size_t>(r) * c) {}

    static FloatMatrix identity(int n);

    cd& at(int r, int c) { return d[static_cast<size_t>(r) * cols + c]; }
    const cd& at(int r, int c) const { return d[static_cast<size_t>(r) * cols + c]; }

    void set_zero() { std::fill(d.begin(), d.end(), cd(0.0, 0.0)); }
};

FloatMatrix from_exact(const ExactMatrix& m);

// C += op(A) op(B) through the runtime-selected kernels.
void gemm_nn_acc(FloatMatrix& c, const FloatMatrix& a, const FloatMatrix& b);
void gemm_nh_acc(FloatMatrix& c, const FloatMatrix& a, const FloatMatrix& b);
void gemm_hn_acc(FloatMatrix& c, const FloatMatrix& a, const FloatMatrix& b);

FloatMatrix mul_nn(const FloatMatrix& a, const FloatMatrix& b);
FloatMatrix mul_nh(const FloatMatrix& a, const FloatMatrix& b);
FloatMatrix mul_hn(const FloatMatrix& a, const FloatMatrix& b);

double frobenius_norm(const FloatMatrix& m);
double trace_real(const FloatMatrix& m);
bool has_non_finite(const FloatMatrix& m);

// Hermitian deviation ||M - M^H||_F; construction sites require this to stay
// below 1e-10 * ||M||_F.
double hermitian_deviation(const FloatMatrix& m);
void require_hermitian(const FloatMatrix& m, const char* where);

struct CholeskyResult {
    FloatMatrix lower;       // L with L L^H = input when ok
    bool ok = false;
    int deficient_index = -1;  // first pivot that fell below the tolerance
};

// Cholesky of a Hermitian PSD matrix. A pivot below rel_tol * trace(input)
// signals rank deficiency instead of producing garbage factors.
CholeskyResult cholesky(const FloatMatrix& m, double rel_tol = 1e-12);

FloatMatrix lower_triangular_inverse(const FloatMatrix& l);

// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const FloatMatrix& m);

// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues plus the
// matching orthonormal eigenvectors as columns.
struct HermitianEig {
    std::vector<double> values;
    FloatMatrix vectors;
};
HermitianEig hermitian_eigensystem(const FloatMatrix& m);

// || A - B ||_tr = sum of |eigenvalues| of the Hermitian difference.
double trace_norm_distance(const FloatMatrix& a, const FloatMatrix& b);

}  // namespace qss
