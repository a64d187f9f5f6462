#include "wgqed/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace wgqed::kernels {

namespace {

// Layout: interleaved (re, im) doubles, two complex values per __m256d.

inline __m256d cmul(__m256d x, double ar, double ai) {
    const __m256d var = _mm256_set1_pd(ar);
    const __m256d vai = _mm256_set1_pd(ai);
    const __m256d t1 = _mm256_mul_pd(x, var);
    const __m256d xs = _mm256_permute_pd(x, 0x5);  // swap re/im per lane
    const __m256d t2 = _mm256_mul_pd(xs, vai);
    return _mm256_addsub_pd(t1, t2);  // [re*ar - im*ai, im*ar + re*ai]
}

void hop_muli_avx2(Complex* dst, const Complex* src, std::size_t n, double J) {
    if (n < 3) return;
    const double* s = reinterpret_cast<const double*>(src);
    double* d = reinterpret_cast<double*>(dst);
    const __m256d coeff = _mm256_setr_pd(-J, J, -J, J);
    std::size_t i = 1;
    const std::size_t last = n - 2;  // inclusive
    for (; i + 1 <= last; i += 2) {
        const __m256d lo = _mm256_loadu_pd(s + 2 * (i - 1));
        const __m256d hi = _mm256_loadu_pd(s + 2 * (i + 1));
        const __m256d sum = _mm256_add_pd(lo, hi);
        const __m256d sw = _mm256_permute_pd(sum, 0x5);
        _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(sw, coeff));
    }
    for (; i <= last; ++i) {
        const Complex c = src[i - 1] + src[i + 1];
        dst[i] = Complex(-J * c.imag(), J * c.real());
    }
}

void axpy_avx2(Complex* dst, const Complex* src, Complex a, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    double* d = reinterpret_cast<double*>(dst);
    const double* s = reinterpret_cast<const double*>(src);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d x = _mm256_loadu_pd(s + 2 * i);
        const __m256d y = _mm256_loadu_pd(d + 2 * i);
        _mm256_storeu_pd(d + 2 * i, _mm256_add_pd(y, cmul(x, ar, ai)));
    }
    for (; i < n; ++i) {
        const double xr = src[i].real(), xi = src[i].imag();
        dst[i] += Complex(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void xpay_avx2(Complex* dst, const Complex* x, Complex a, const Complex* y, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    double* d = reinterpret_cast<double*>(dst);
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        const __m256d yv = _mm256_loadu_pd(ys + 2 * i);
        _mm256_storeu_pd(d + 2 * i, _mm256_add_pd(xv, cmul(yv, ar, ai)));
    }
    for (; i < n; ++i) {
        const double yr = y[i].real(), yi = y[i].imag();
        dst[i] = x[i] + Complex(ar * yr - ai * yi, ar * yi + ai * yr);
    }
}

double norm_sq_avx2(const Complex* src, std::size_t n) {
    const double* s = reinterpret_cast<const double*>(src);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d x = _mm256_loadu_pd(s + 2 * i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i)
        total += src[i].real() * src[i].real() + src[i].imag() * src[i].imag();
    return total;
}

const Ops avx2_table{hop_muli_avx2, axpy_avx2, xpay_avx2, norm_sq_avx2, "avx2"};

}  // namespace

const Ops* avx2_ops() { return &avx2_table; }

}  // namespace wgqed::kernels

#else

namespace wgqed::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace wgqed::kernels

#endif
