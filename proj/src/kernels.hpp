#pragma once

// Internal kernel entry points. Each kernel has a scalar reference and
// may have an AVX2 variant; variants of the same kernel are required
// to produce bitwise-identical output (same operations in the same
// order per output pixel, no FMA contraction).

#include <array>
#include <cstdint>
#include <vector>

#include "lanepre/bilateral.hpp"
#include "lanepre/gray.hpp"
#include "lanepre/image.hpp"

namespace lanepre::detail {

inline int fold_index(int i, int n, filter::Border border) {
    if (i >= 0 && i < n) return i;
    if (border == filter::Border::Replicate) return i < 0 ? 0 : n - 1;
    return mirror_index(i, n);
}

// Weight tables shared by the scalar and AVX2 bilateral kernels. For
// 8-bit input the table lookup reproduces the per-tap exponential
// exactly: entry d holds exp(-(d*d) / (2*sigma_intensity^2)) and
// d*d == (double(a) - double(b))^2 for any two samples.
struct BilateralTables {
    std::vector<double> spatial; // kernel_size^2 entries, window row-major
    std::array<double, 256> range{};
    int radius = 0;

    explicit BilateralTables(const filter::BilateralParams& params);
};

// One output pixel of the 8-bit bilateral path; handles borders.
// Shared by the scalar kernel and the AVX2 kernel's edge handling.
double bilateral_pixel(const ImageU8& in, const BilateralTables& t, int x, int y,
                       filter::Border border);

void bilateral_u8_scalar(const ImageU8& in, const BilateralTables& t,
                         filter::Border border, ImageF64& out);

void luma_row_scalar(const uint8_t* b, const uint8_t* g, const uint8_t* r,
                     uint8_t* out, int n, const LumaWeights& w);

#ifdef LANEPRE_HAVE_AVX2
void bilateral_u8_avx2(const ImageU8& in, const BilateralTables& t,
                       filter::Border border, ImageF64& out);

void luma_row_avx2(const uint8_t* b, const uint8_t* g, const uint8_t* r,
                   uint8_t* out, int n, const LumaWeights& w);
#endif

} // namespace lanepre::detail
