#include "wgqed/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace wgqed::kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

const Ops& select() {
    if (const char* env = std::getenv("WGQED_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return scalar_ops();
        if (std::strcmp(env, "avx2") == 0 && avx2_available() && avx2_ops())
            return *avx2_ops();
    }
    if (avx2_available() && avx2_ops()) return *avx2_ops();
    return scalar_ops();
}

}  // namespace

const Ops& active() {
    static const Ops& ops = select();
    return ops;
}

}  // namespace wgqed::kernels
