// AVX2 variants of the hot per-pixel kernels. Every arithmetic step
// mirrors the scalar reference exactly (same operand order, separate
// mul/add, division last), so results are bitwise identical; the unit
// tests assert that equality.

#include <cstring>
#include <immintrin.h>

#include "kernels.hpp"

namespace lanepre::detail {

namespace {

// 4 consecutive bytes widened to int32 lanes.
inline __m128i load4_u8(const uint8_t* p) {
    int32_t packed;
    std::memcpy(&packed, p, sizeof packed);
    return _mm_cvtepu8_epi32(_mm_cvtsi32_si128(packed));
}

// floor(v + 0.5) clamped to [0, 255], the vector form of round_u8.
inline __m128i round_u8_lanes(__m256d v) {
    __m256d f = _mm256_floor_pd(_mm256_add_pd(v, _mm256_set1_pd(0.5)));
    f = _mm256_max_pd(f, _mm256_setzero_pd());
    f = _mm256_min_pd(f, _mm256_set1_pd(255.0));
    return _mm256_cvtpd_epi32(f); // integral after floor, conversion exact
}

} // namespace

void luma_row_avx2(const uint8_t* b, const uint8_t* g, const uint8_t* r,
                   uint8_t* out, int n, const LumaWeights& w) {
    const __m256d wr = _mm256_set1_pd(w.r);
    const __m256d wg = _mm256_set1_pd(w.g);
    const __m256d wb = _mm256_set1_pd(w.b);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d rv = _mm256_cvtepi32_pd(load4_u8(r + i));
        const __m256d gv = _mm256_cvtepi32_pd(load4_u8(g + i));
        const __m256d bv = _mm256_cvtepi32_pd(load4_u8(b + i));
        // Same association as the scalar path: (wr*r + wg*g) + wb*b.
        __m256d v = _mm256_add_pd(_mm256_mul_pd(wr, rv), _mm256_mul_pd(wg, gv));
        v = _mm256_add_pd(v, _mm256_mul_pd(wb, bv));
        const __m128i q = round_u8_lanes(v);
        const __m128i bytes = _mm_shuffle_epi8(
            q, _mm_setr_epi8(0, 4, 8, 12, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1));
        const int32_t packed = _mm_cvtsi128_si32(bytes);
        std::memcpy(out + i, &packed, sizeof packed);
    }
    if (i < n) luma_row_scalar(b + i, g + i, r + i, out + i, n - i, w);
}

void bilateral_u8_avx2(const ImageU8& in, const BilateralTables& t,
                       filter::Border border, ImageF64& out) {
    const int w = in.width(), h = in.height(), r = t.radius;
    const int x_first = r;
    const int x_last_vec = w - r - 4; // last start where all 4 windows fit
    for (int y = 0; y < h; ++y) {
        const bool interior_row = y >= r && y <= h - 1 - r;
        int x = 0;
        if (interior_row) {
            for (; x < x_first; ++x) out.at(x, y) = bilateral_pixel(in, t, x, y, border);
            for (; x <= x_last_vec; x += 4) {
                const __m128i center = load4_u8(in.row(y) + x);
                __m256d acc = _mm256_setzero_pd();
                __m256d wsum = _mm256_setzero_pd();
                size_t ki = 0;
                for (int dy = -r; dy <= r; ++dy) {
                    const uint8_t* row = in.row(y + dy) + x;
                    for (int dx = -r; dx <= r; ++dx, ++ki) {
                        const __m128i v32 = load4_u8(row + dx);
                        const __m256d val = _mm256_cvtepi32_pd(v32);
                        const __m128i diff = _mm_abs_epi32(_mm_sub_epi32(v32, center));
                        const __m256d range =
                            _mm256_i32gather_pd(t.range.data(), diff, sizeof(double));
                        const __m256d wgt =
                            _mm256_mul_pd(_mm256_set1_pd(t.spatial[ki]), range);
                        acc = _mm256_add_pd(acc, _mm256_mul_pd(wgt, val));
                        wsum = _mm256_add_pd(wsum, wgt);
                    }
                }
                _mm256_storeu_pd(out.row(y) + x, _mm256_div_pd(acc, wsum));
            }
        }
        for (; x < w; ++x) out.at(x, y) = bilateral_pixel(in, t, x, y, border);
    }
}

} // namespace lanepre::detail
