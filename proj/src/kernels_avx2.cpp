#include "qss/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace qss::kernels {

namespace {

// Complex doubles are interleaved (re, im), so a 256-bit register holds two.
// For a broadcast complex scalar a and packed pair b:
//   a*b = addsub(a_re * b, a_im * swap(b))
// which is fmaddsub(a_re, b, a_im * swap(b)) with FMA.

inline __m256d cmul_acc(__m256d acc, __m256d are, __m256d aim, __m256d b) {
    __m256d bs = _mm256_permute_pd(b, 0x5);
    return _mm256_add_pd(acc, _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bs)));
}

void avx2_nn(cd* c, const cd* a, const cd* b, int m, int k, int n) {
    const double* bd = reinterpret_cast<const double*>(b);
    for (int i = 0; i < m; ++i) {
        double* crow = reinterpret_cast<double*>(c + static_cast<size_t>(i) * n);
        for (int l = 0; l < k; ++l) {
            cd av = a[static_cast<size_t>(i) * k + l];
            if (av.real() == 0.0 && av.imag() == 0.0) continue;
            __m256d are = _mm256_set1_pd(av.real());
            __m256d aim = _mm256_set1_pd(av.imag());
            const double* brow = bd + 2 * static_cast<size_t>(l) * n;
            int j = 0;
            for (; j + 2 <= n; j += 2) {
                __m256d bv = _mm256_loadu_pd(brow + 2 * j);
                __m256d cv = _mm256_loadu_pd(crow + 2 * j);
                _mm256_storeu_pd(crow + 2 * j, cmul_acc(cv, are, aim, bv));
            }
            for (; j < n; ++j) {
                cd prod = av * b[static_cast<size_t>(l) * n + j];
                crow[2 * j] += prod.real();
                crow[2 * j + 1] += prod.imag();
            }
        }
    }
}

void avx2_nh(cd* c, const cd* a, const cd* b, int m, int k, int n) {
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    for (int i = 0; i < m; ++i) {
        const double* arow = ad + 2 * static_cast<size_t>(i) * k;
        for (int j = 0; j < n; ++j) {
            const double* brow = bd + 2 * static_cast<size_t>(j) * k;
            __m256d accp = _mm256_setzero_pd();
            __m256d accq = _mm256_setzero_pd();
            int l = 0;
            for (; l + 2 <= k; l += 2) {
                __m256d av = _mm256_loadu_pd(arow + 2 * l);
                __m256d bv = _mm256_loadu_pd(brow + 2 * l);
                accp = _mm256_fmadd_pd(av, bv, accp);
                accq = _mm256_fmadd_pd(_mm256_permute_pd(av, 0x5), bv, accq);
            }
            double p[4], q[4];
            _mm256_storeu_pd(p, accp);
            _mm256_storeu_pd(q, accq);
            // a * conj(b): re = sum(a_re b_re + a_im b_im), im = sum(a_im b_re - a_re b_im)
            double re = p[0] + p[1] + p[2] + p[3];
            double im = (q[0] - q[1]) + (q[2] - q[3]);
            for (; l < k; ++l) {
                cd prod = a[static_cast<size_t>(i) * k + l] * std::conj(b[static_cast<size_t>(j) * k + l]);
                re += prod.real();
                im += prod.imag();
            }
            c[static_cast<size_t>(i) * n + j] += cd(re, im);
        }
    }
}

void avx2_hn(cd* c, const cd* a, const cd* b, int m, int k, int n) {
    const double* bd = reinterpret_cast<const double*>(b);
    for (int l = 0; l < k; ++l) {
        const double* brow = bd + 2 * static_cast<size_t>(l) * n;
        for (int i = 0; i < m; ++i) {
            cd av = std::conj(a[static_cast<size_t>(l) * m + i]);
            if (av.real() == 0.0 && av.imag() == 0.0) continue;
            __m256d are = _mm256_set1_pd(av.real());
            __m256d aim = _mm256_set1_pd(av.imag());
            double* crow = reinterpret_cast<double*>(c + static_cast<size_t>(i) * n);
            int j = 0;
            for (; j + 2 <= n; j += 2) {
                __m256d bv = _mm256_loadu_pd(brow + 2 * j);
                __m256d cv = _mm256_loadu_pd(crow + 2 * j);
                _mm256_storeu_pd(crow + 2 * j, cmul_acc(cv, are, aim, bv));
            }
            for (; j < n; ++j) {
                cd prod = av * b[static_cast<size_t>(l) * n + j];
                crow[2 * j] += prod.real();
                crow[2 * j + 1] += prod.imag();
            }
        }
    }
}

const Kernels kAvx2{avx2_nn, avx2_nh, avx2_hn, "avx2"};

}  // namespace

const Kernels* avx2_kernels() {
    static const Kernels* available = [] {
        __builtin_cpu_init();
        bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
        return ok ? &kAvx2 : static_cast<const Kernels*>(nullptr);
    }();
    return available;
}

}  // namespace qss::kernels

#else

namespace qss::kernels {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace qss::kernels

#endif
