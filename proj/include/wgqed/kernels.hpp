#pragma once

#include <cstddef>

#include "wgqed/types.hpp"

namespace wgqed::kernels {

// Hot loops of the time steppers. Scalar reference implementations and AVX2
// variants share this table; the active set is chosen once at startup from
// CPUID (override with WGQED_SIMD=scalar|avx2). The state-update kernels
// (hop_muli, axpy, xpay) use identical per-element operation order in both
// variants, so trajectories are bit-identical; norm_sq is a diagnostic and
// its reduction order may differ.
struct Ops {
    // dst[i] = i*J*(src[i-1] + src[i+1]) for i in [1, n-2]; callers handle
    // the two boundary sites. This is -i * (-J hop) applied to the interior.
    void (*hop_muli)(Complex* dst, const Complex* src, std::size_t n, double J);
    // dst[i] += a * src[i]
    void (*axpy)(Complex* dst, const Complex* src, Complex a, std::size_t n);
    // dst[i] = x[i] + a * y[i]
    void (*xpay)(Complex* dst, const Complex* x, Complex a, const Complex* y, std::size_t n);
    // sum |src[i]|^2
    double (*norm_sq)(const Complex* src, std::size_t n);

    const char* name;
};

const Ops& active();
const Ops& scalar_ops();
bool avx2_available();
const Ops* avx2_ops();  // nullptr when unsupported

}  // namespace wgqed::kernels
