#pragma once

#include <string>

namespace lanepre {

// Kernel implementation selector. Auto picks the fastest backend the
// CPU supports at runtime; Scalar and Avx2 force a specific one (the
// AVX2 kernels are bit-exact against the scalar references).
enum class Backend { Auto, Scalar, Avx2 };

// True when the running CPU supports AVX2 (and the build enabled the
// AVX2 translation units at all).
bool cpu_has_avx2();

// Collapse Auto to a concrete backend for this machine. Requesting
// Avx2 on a CPU without it throws.
Backend resolve_backend(Backend requested);

std::string to_string(Backend b);
Backend backend_from_string(const std::string& name);

} // namespace lanepre
