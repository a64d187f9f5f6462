#include "wgqed/kernels.hpp"

namespace wgqed::kernels {

namespace {

void hop_muli_scalar(Complex* dst, const Complex* src, std::size_t n, double J) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Complex s = src[i - 1] + src[i + 1];
        dst[i] = Complex(-J * s.imag(), J * s.real());
    }
}

void axpy_scalar(Complex* dst, const Complex* src, Complex a, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = src[i].real(), xi = src[i].imag();
        dst[i] += Complex(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void xpay_scalar(Complex* dst, const Complex* x, Complex a, const Complex* y, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double yr = y[i].real(), yi = y[i].imag();
        dst[i] = x[i] + Complex(ar * yr - ai * yi, ar * yi + ai * yr);
    }
}

double norm_sq_scalar(const Complex* src, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += src[i].real() * src[i].real() + src[i].imag() * src[i].imag();
    return acc;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{hop_muli_scalar, axpy_scalar, xpay_scalar, norm_sq_scalar, "scalar"};
    return ops;
}

}  // namespace wgqed::kernels
