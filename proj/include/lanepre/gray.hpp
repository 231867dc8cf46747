#pragma once

#include "lanepre/backend.hpp"
#include "lanepre/image.hpp"

namespace lanepre {

// Per-channel luma weights; defaults are the ITU-R BT.601 coefficients.
struct LumaWeights {
    double r = 0.299;
    double g = 0.587;
    double b = 0.114;
};

// Weighted sum of the three planes, rounded half-up to 8 bits.
ImageU8 to_grayscale(const FrameRgb& frame, const LumaWeights& w = {},
                     Backend backend = Backend::Auto);

// Linear map of [min, max] onto [0, 255], rounded half-up. A constant
// image (max == min) maps to all zeros.
ImageU8 normalize_to_u8(const ImageF64& image);
ImageU8 normalize_to_u8(const ImageU8& image);

} // namespace lanepre
