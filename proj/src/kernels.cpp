#include "qss/kernels.hpp"

namespace qss::kernels {

namespace {

void scalar_nn(cd* c, const cd* a, const cd* b, int m, int k, int n) {
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < k; ++l) {
            cd av = a[static_cast<size_t>(i) * k + l];
            if (av == cd(0.0, 0.0)) continue;
            const cd* brow = b + static_cast<size_t>(l) * n;
            cd* crow = c + static_cast<size_t>(i) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
}

void scalar_nh(cd* c, const cd* a, const cd* b, int m, int k, int n) {
    for (int i = 0; i < m; ++i) {
        const cd* arow = a + static_cast<size_t>(i) * k;
        cd* crow = c + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const cd* brow = b + static_cast<size_t>(j) * k;
            cd acc(0.0, 0.0);
            for (int l = 0; l < k; ++l) acc += arow[l] * std::conj(brow[l]);
            crow[j] += acc;
        }
    }
}

void scalar_hn(cd* c, const cd* a, const cd* b, int m, int k, int n) {
    for (int l = 0; l < k; ++l) {
        const cd* arow = a + static_cast<size_t>(l) * m;
        const cd* brow = b + static_cast<size_t>(l) * n;
        for (int i = 0; i < m; ++i) {
            cd av = std::conj(arow[i]);
            if (av == cd(0.0, 0.0)) continue;
            cd* crow = c + static_cast<size_t>(i) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

const Kernels kScalar{scalar_nn, scalar_nh, scalar_hn, "scalar"};

const Kernels* g_forced = nullptr;

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

void force(const Kernels* k) { g_forced = k; }

const Kernels& active() {
    if (g_forced) return *g_forced;
    static const Kernels* selected = [] {
        if (const Kernels* v = avx2_kernels()) return v;
        return &kScalar;
    }();
    return *selected;
}

}  // namespace qss::kernels
