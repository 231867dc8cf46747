#pragma once

#include "lanepre/backend.hpp"
#include "lanepre/image.hpp"

namespace lanepre::filter {

// How out-of-image taps are resolved: symmetric mirror (edge pixel
// repeated: -1 -> 0) or edge replication.
enum class Border { Mirror, Replicate };

// Edge-preserving smoother: each output pixel is the normalized sum of
// window pixels weighted by exp(-dist^2 / (2*sigma_spatial^2)) *
// exp(-(dI)^2 / (2*sigma_intensity^2)).
struct BilateralParams {
    int kernel_size = 7;
    double sigma_spatial = 50.0;
    double sigma_intensity = 25.0;
    Border border = Border::Mirror;

    void validate() const;
};

// Reference path for arbitrary real-valued input. Scalar only;
// accumulates in double, window scanned in row-major order.
ImageF64 bilateral_filter(const ImageF64& image, const BilateralParams& params);

// 8-bit input path used by the frame pipeline. Returns the raw
// pre-rounding weighted means; numerically identical to the reference
// path on the same values (the integer-valued input admits an exact
// weight lookup table). Backend selects the scalar or AVX2 kernel,
// which produce bitwise-identical output.
ImageF64 bilateral_filter_raw(const ImageU8& image, const BilateralParams& params,
                              Backend backend = Backend::Auto);

// Same as bilateral_filter_raw, rounded half-up to 8 bits.
ImageU8 bilateral_filter_u8(const ImageU8& image, const BilateralParams& params,
                            Backend backend = Backend::Auto);

} // namespace lanepre::filter
