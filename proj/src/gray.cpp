#include "lanepre/gray.hpp"

#include <algorithm>

#include "kernels.hpp"

namespace lanepre {

namespace detail {

void luma_row_scalar(const uint8_t* b, const uint8_t* g, const uint8_t* r,
                     uint8_t* out, int n, const LumaWeights& w) {
    for (int i = 0; i < n; ++i) {
        const double v = w.r * r[i] + w.g * g[i] + w.b * b[i];
        out[i] = round_u8(v);
    }
}

} // namespace detail

ImageU8 to_grayscale(const FrameRgb& frame, const LumaWeights& w, Backend backend) {
    const Backend be = resolve_backend(backend);
    ImageU8 out(frame.width(), frame.height());
    for (int y = 0; y < frame.height(); ++y) {
        const uint8_t* b = frame.blue().row(y);
        const uint8_t* g = frame.green().row(y);
        const uint8_t* r = frame.red().row(y);
        uint8_t* o = out.row(y);
#ifdef LANEPRE_HAVE_AVX2
        if (be == Backend::Avx2) {
            detail::luma_row_avx2(b, g, r, o, frame.width(), w);
            continue;
        }
#else
        (void)be;
#endif
        detail::luma_row_scalar(b, g, r, o, frame.width(), w);
    }
    return out;
}

namespace {

template <typename T>
ImageU8 normalize_impl(const Image<T>& image) {
    const T* p = image.data();
    T lo = p[0], hi = p[0];
    for (size_t i = 1; i < image.size(); ++i) {
        lo = std::min(lo, p[i]);
        hi = std::max(hi, p[i]);
    }
    ImageU8 out(image.width(), image.height());
    if (!(hi > lo)) return out; // constant input maps to all zeros
    const double scale = 255.0 / (static_cast<double>(hi) - static_cast<double>(lo));
    uint8_t* o = out.data();
    for (size_t i = 0; i < image.size(); ++i)
        o[i] = round_u8((static_cast<double>(p[i]) - static_cast<double>(lo)) * scale);
    return out;
}

} // namespace

ImageU8 normalize_to_u8(const ImageF64& image) { return normalize_impl(image); }
ImageU8 normalize_to_u8(const ImageU8& image) { return normalize_impl(image); }

} // namespace lanepre
