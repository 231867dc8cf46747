#include "lanepre/canny.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lanepre::edge {

ImageF64 GradientField::magnitude() const {
    ImageF64 out(width(), height());
    for (int y = 0; y < height(); ++y)
        for (int x = 0; x < width(); ++x)
            out.at(x, y) = std::sqrt(static_cast<double>(mag2.at(x, y)));
    return out;
}

ImageF64 GradientField::direction() const {
    ImageF64 out(width(), height());
    for (int y = 0; y < height(); ++y)
        for (int x = 0; x < width(); ++x)
            out.at(x, y) = std::atan2(static_cast<double>(gy.at(x, y)),
                                      static_cast<double>(gx.at(x, y)));
    return out;
}

CannyThresholds CannyThresholds::from_high(double th_high) {
    if (!(th_high >= 1.0 && th_high <= kMaxGradientMagnitude))
        throw std::invalid_argument("canny: th_high must be in [1, 1443]");
    return CannyThresholds{th_high, th_high / 3.0};
}

GradientField sobel_gradients(const ImageU8& image) {
    const int w = image.width(), h = image.height();
    if (w < 3 || h < 3)
        throw std::invalid_argument("sobel: image must be at least 3x3");
    GradientField grad{Image<int16_t>(w, h), Image<int16_t>(w, h), Image<int32_t>(w, h)};
    for (int y = 0; y < h; ++y) {
        const uint8_t* rm = image.row(mirror_index(y - 1, h));
        const uint8_t* rc = image.row(y);
        const uint8_t* rp = image.row(mirror_index(y + 1, h));
        for (int x = 0; x < w; ++x) {
            const int xm = mirror_index(x - 1, w);
            const int xp = mirror_index(x + 1, w);
            const int nw = rm[xm], n = rm[x], ne = rm[xp];
            const int ww = rc[xm], ee = rc[xp];
            const int sw = rp[xm], s = rp[x], se = rp[xp];
            const int gx = (ne + 2 * ee + se) - (nw + 2 * ww + sw);
            const int gy = (sw + 2 * s + se) - (nw + 2 * n + ne);
            grad.gx.at(x, y) = static_cast<int16_t>(gx);
            grad.gy.at(x, y) = static_cast<int16_t>(gy);
            grad.mag2.at(x, y) = gx * gx + gy * gy;
        }
    }
    return grad;
}

int quantize_direction(int gx, int gy) {
    // Fold to the upper half-plane so the angle is in [0, 180).
    if (gy < 0 || (gy == 0 && gx < 0)) {
        gx = -gx;
        gy = -gy;
    }
    if (gx == 0 && gy == 0) return 0;
    static const double kTan22 = std::tan(22.5 * std::acos(-1.0) / 180.0);
    static const double kTan67 = std::tan(67.5 * std::acos(-1.0) / 180.0);
    const double ax = std::abs(static_cast<double>(gx));
    const double ay = static_cast<double>(gy);
    if (ay < kTan22 * ax) return 0;          // near-horizontal gradient
    if (ay > kTan67 * ax) return 2;          // near-vertical gradient
    return gx > 0 ? 1 : 3;                   // diagonals
}

EdgeMap non_maximum_suppression(const GradientField& grad) {
    const int w = grad.width(), h = grad.height();
    // Raster-order offsets of the two neighbors along each quantized
    // direction: prev comes earlier than the pixel, next later.
    static constexpr int kPrev[4][2] = {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    static constexpr int kNext[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};
    EdgeMap out(w, h);
    auto mag2_at = [&](int x, int y) -> int32_t {
        if (x < 0 || x >= w || y < 0 || y >= h) return 0;
        return grad.mag2.at(x, y);
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int32_t m = grad.mag2.at(x, y);
            if (m == 0) continue;
            const int bin = quantize_direction(grad.gx.at(x, y), grad.gy.at(x, y));
            const int32_t prev = mag2_at(x + kPrev[bin][0], y + kPrev[bin][1]);
            const int32_t next = mag2_at(x + kNext[bin][0], y + kNext[bin][1]);
            // Strict against the earlier neighbor, lenient toward the
            // later one: a plateau of equal magnitudes keeps exactly
            // its first pixel, so an ideal step yields a single
            // one-pixel-wide line.
            if (m > prev && m >= next) out.at(x, y) = 1;
        }
    }
    return out;
}

EdgeMap canny(const ImageU8& image, double th_high) {
    const CannyThresholds th = CannyThresholds::from_high(th_high);
    const GradientField grad = sobel_gradients(image);
    const EdgeMap nms = non_maximum_suppression(grad);
    const int w = image.width(), h = image.height();
    const double hi2 = th.th_high * th.th_high;
    const double lo2 = th.th_low * th.th_low;

    // 0 = rejected, 1 = weak candidate, 2 = strong seed.
    Image<uint8_t> cls(w, h);
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!nms.at(x, y)) continue;
            const double m2 = static_cast<double>(grad.mag2.at(x, y));
            if (m2 > hi2) {
                cls.at(x, y) = 2;
                stack.emplace_back(x, y);
            } else if (m2 >= lo2) {
                cls.at(x, y) = 1;
            }
        }
    }

    // Flood from strong seeds over 8-connected weak candidates.
    EdgeMap out(w, h);
    while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        if (out.at(x, y)) continue;
        out.at(x, y) = 1;
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                if (cls.at(nx, ny) != 0 && !out.at(nx, ny)) stack.emplace_back(nx, ny);
            }
        }
    }
    return out;
}

} // namespace lanepre::edge
