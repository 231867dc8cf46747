#include "lanepre/backend.hpp"

#include <stdexcept>

namespace lanepre {

bool cpu_has_avx2() {
#if defined(LANEPRE_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend resolve_backend(Backend requested) {
    switch (requested) {
    case Backend::Auto:
        return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
    case Backend::Scalar:
        return Backend::Scalar;
    case Backend::Avx2:
        if (!cpu_has_avx2())
            throw std::runtime_error("backend avx2 requested but not supported on this CPU");
        return Backend::Avx2;
    }
    throw std::logic_error("unreachable backend value");
}

std::string to_string(Backend b) {
    switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    }
    return "auto";
}

Backend backend_from_string(const std::string& name) {
    if (name == "auto") return Backend::Auto;
    if (name == "scalar") return Backend::Scalar;
    if (name == "avx2") return Backend::Avx2;
    throw std::invalid_argument("unknown backend name: " + name);
}

} // namespace lanepre
