#pragma once

#include <cstdint>

#include "lanepre/image.hpp"

namespace lanepre::edge {

// 3x3 Sobel responses. Gradients are exact integers for 8-bit input:
// |gx|,|gy| <= 1020, so mag2 = gx^2 + gy^2 <= 2'080'800 fits in int32
// and the L2 magnitude never exceeds 1443.
struct GradientField {
    Image<int16_t> gx;
    Image<int16_t> gy;
    Image<int32_t> mag2;

    int width() const { return mag2.width(); }
    int height() const { return mag2.height(); }

    // L2 magnitude sqrt(gx^2 + gy^2) per pixel.
    ImageF64 magnitude() const;
    // Gradient angle atan2(gy, gx) in radians, y axis pointing down.
    ImageF64 direction() const;
};

// Largest possible L2 Sobel magnitude on 8-bit input, rounded up.
inline constexpr double kMaxGradientMagnitude = 1443.0;

// Strong/weak threshold pair; the weak threshold is always exactly one
// third of the strong one.
struct CannyThresholds {
    double th_high = 0.0;
    double th_low = 0.0;

    // Throws if th_high is outside [1, 1443].
    static CannyThresholds from_high(double th_high);
};

// Standard 3x3 Sobel with mirror-reflected borders.
GradientField sobel_gradients(const ImageU8& image);

// Gradient direction quantized to 4 bins: 0 = east-west neighbors,
// 1 = down-right diagonal, 2 = north-south, 3 = down-left diagonal.
int quantize_direction(int gx, int gy);

// Full edge extraction: Sobel -> non-maximum suppression along the
// quantized gradient direction -> dual-threshold hysteresis with
// 8-connected flood fill from strong pixels. mag > th_high is strong;
// th_low <= mag <= th_high is weak and kept only when transitively
// connected to a strong pixel.
EdgeMap canny(const ImageU8& image, double th_high);

// Exposed for tests: NMS survivors as a 0/1 map.
EdgeMap non_maximum_suppression(const GradientField& grad);

} // namespace lanepre::edge
