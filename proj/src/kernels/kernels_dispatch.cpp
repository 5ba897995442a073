// SPDX-License-Identifier: Apache-2.0

#include "kernels_internal.hpp"

#include <cstdlib>
#include <cstring>

namespace binet::kernels {

bool avx2_compiled() {
#if defined(BINET_HAVE_AVX2)
    return true;
#else
    return false;
#endif
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops& table(Backend b) {
    switch (b) {
    case Backend::Scalar:
        return scalar_ops();
    case Backend::Avx2:
#if defined(BINET_HAVE_AVX2)
        if (avx2_supported()) return avx2_ops();
        throw ConfigError("avx2 kernels requested but CPU lacks AVX2/FMA");
#else
        throw ConfigError("avx2 kernels requested but not compiled in");
#endif
    }
    return scalar_ops();
}

Backend preferred_backend() {
    static const Backend picked = [] {
        if (const char* env = std::getenv("BINET_KERNELS")) {
            if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
            if (std::strcmp(env, "avx2") == 0) {
                (void)table(Backend::Avx2); // validate, throws if unusable
                return Backend::Avx2;
            }
            throw ConfigError(std::string("unknown BINET_KERNELS value: ") + env);
        }
        if (avx2_compiled() && avx2_supported()) return Backend::Avx2;
        return Backend::Scalar;
    }();
    return picked;
}

const Ops& active() {
    static const Ops& ops = table(preferred_backend());
    return ops;
}

} // namespace binet::kernels
