#pragma once

#include <complex>

namespace qss::kernels {

using cd = std::complex<double>;

// Accumulating complex GEMM variants over row-major dense buffers.
//   nn: C (m x n) += A (m x k) * B (k x n)
//   nh: C (m x n) += A (m x k) * B^H   with B stored as n x k
//   hn: C (m x n) += A^H * B           with A stored as k x m, B as k x n
// These are the inner loops of the scaling sweeps; every variant must agree
// with the scalar reference to ~1e-12 relative (equivalence-tested).
using GemmFn = void (*)(cd* c, const cd* a, const cd* b, int m, int k, int n);

struct Kernels {
    GemmFn nn;
    GemmFn nh;
    GemmFn hn;
    const char* name;
};

const Kernels& scalar_kernels();

// AVX2+FMA implementations; nullptr when the build or the CPU lacks support.
const Kernels* avx2_kernels();

// Runtime-selected set (AVX2 when available, otherwise scalar).
const Kernels& active();

// Test hook: pin a specific set; nullptr restores automatic selection.
void force(const Kernels* k);

}  // namespace qss::kernels
