#pragma once

// Independent re-implementations used as comparison oracles. Each is
// written from the documented conventions with its own code — different
// data layout, different control flow, no library helpers — so a bug
// in the production kernels cannot hide in a shared routine.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include "lanepre/image.hpp"

namespace oracles {

// Mirror fold by explicit reflection walking, handling any overshoot.
inline int reflect(int i, int n) {
    if (n == 1) return 0;
    while (i < 0 || i >= n) {
        if (i < 0) i = -1 - i;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

// Brute-force bilateral: per-tap exponential evaluation, no tables.
inline lanepre::ImageF64 bilateral(const lanepre::ImageU8& in, int kernel,
                                   double sigma_s, double sigma_i) {
    const int w = in.width(), h = in.height(), r = kernel / 2;
    const double inv_s = 1.0 / (2.0 * sigma_s * sigma_s);
    const double inv_i = 1.0 / (2.0 * sigma_i * sigma_i);
    lanepre::ImageF64 out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double center = in.at(x, y);
            double num = 0.0, den = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    const double v = in.at(reflect(x + dx, w), reflect(y + dy, h));
                    const double wgt = std::exp(-(dx * dx + dy * dy) * inv_s) *
                                       std::exp(-(v - center) * (v - center) * inv_i);
                    num += wgt * v;
                    den += wgt;
                }
            }
            out.at(x, y) = num / den;
        }
    }
    return out;
}

// Spatial-only Gaussian blur with the same window and border rules;
// the bilateral must converge to this as sigma_intensity grows.
inline lanepre::ImageF64 gaussian_blur(const lanepre::ImageU8& in, int kernel,
                                       double sigma_s) {
    const int w = in.width(), h = in.height(), r = kernel / 2;
    const double inv_s = 1.0 / (2.0 * sigma_s * sigma_s);
    lanepre::ImageF64 out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double num = 0.0, den = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    const double wgt = std::exp(-(dx * dx + dy * dy) * inv_s);
                    num += wgt * in.at(reflect(x + dx, w), reflect(y + dy, h));
                    den += wgt;
                }
            }
            out.at(x, y) = num / den;
        }
    }
    return out;
}

// Mamdani centroid for the default line-count controller, with the
// breakpoints restated literally and each membership evaluated by a
// dedicated closed-form expression.
inline double fis_delta(double n) {
    auto tri = [](double x, double a, double b, double c) {
        if (x <= a || x >= c) return x == b ? 1.0 : 0.0;
        return x < b ? (x - a) / (b - a) : (c - x) / (c - b);
    };
    const double too_few = n <= 2.0 ? 1.0 : n >= 5.0 ? 0.0 : (5.0 - n) / 3.0;
    const double few = tri(n, 2.0, 5.0, 10.0);
    const double good = n <= 5.0 || n >= 25.0 ? 0.0
                        : n < 10.0            ? (n - 5.0) / 5.0
                        : n <= 20.0           ? 1.0
                                              : (25.0 - n) / 5.0;
    const double many = tri(n, 20.0, 30.0, 40.0);
    const double too_many = n <= 30.0 ? 0.0 : n >= 40.0 ? 1.0 : (n - 30.0) / 10.0;

    const struct {
        double strength, a, b, c;
    } clipped[5] = {
        {too_few, -1.5, -1.0, -0.5}, {few, -0.5, -0.25, 0.0}, {good, -0.5, 0.0, 0.5},
        {many, 0.0, 0.25, 0.5},      {too_many, 3.5, 4.0, 4.5},
    };

    const int samples = 4096;
    const double lo = -1.5, hi = 4.5, step = (hi - lo) / samples;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double z = lo + (i + 0.5) * step;
        double mu = 0.0;
        for (const auto& r : clipped)
            mu = std::max(mu, std::min(r.strength, tri(z, r.a, r.b, r.c)));
        num += z * mu;
        den += mu;
    }
    return den > 0.0 ? num / den : 0.0;
}

// Barycentric point-in-triangle, boundary inclusive. All numerators
// are computed as their own cross products (no 1 - u - v shortcut), so
// for integer-valued inputs every sign test is exact.
inline bool in_triangle(double px, double py, double ax, double ay, double bx,
                        double by, double cx, double cy) {
    const double d = (by - cy) * (ax - cx) + (cx - bx) * (ay - cy);
    const double wa = (by - cy) * (px - cx) + (cx - bx) * (py - cy);
    const double wb = (cy - ay) * (px - cx) + (ax - cx) * (py - cy);
    const double wc = (ay - by) * (px - ax) + (bx - ax) * (py - ay);
    auto agrees = [d](double v) { return d >= 0.0 ? v >= 0.0 : v <= 0.0; };
    return agrees(wa) && agrees(wb) && agrees(wc);
}

struct HoughPeak {
    int rho_index, theta_index, votes;
    double rho, theta_deg;
};

// Accumulator plus 3x3 peak scan from the documented conventions:
// rho in [-D, D] at rho_res with round-to-nearest binning, theta in
// [0, 180) at theta_res, peaks need votes >= vote_min and must beat
// every neighbor, equal-vote plateaus reporting only the cell with the
// smallest (rho, theta) index.
inline std::vector<HoughPeak> hough(const lanepre::EdgeMap& edges, double rho_res = 1.0,
                                    double theta_res = 1.0, int vote_min = 3) {
    const int w = edges.width(), h = edges.height();
    const double diag = std::sqrt(double(w) * w + double(h) * h);
    const int center = static_cast<int>(std::ceil(diag / rho_res));
    const int n_rho = 2 * center + 1;
    const int n_theta = static_cast<int>(std::ceil(180.0 / theta_res - 1e-9));
    const double deg = std::acos(-1.0) / 180.0;

    std::vector<std::vector<int>> acc(n_rho, std::vector<int>(n_theta, 0));
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!edges.at(x, y)) continue;
            for (int t = 0; t < n_theta; ++t) {
                const double angle = t * theta_res * deg;
                const double rho = x * std::cos(angle) + y * std::sin(angle);
                const int bin = static_cast<int>(std::floor(rho / rho_res + 0.5)) + center;
                acc[bin][t]++;
            }
        }

    std::vector<HoughPeak> peaks;
    for (int r = 0; r < n_rho; ++r)
        for (int t = 0; t < n_theta; ++t) {
            const int v = acc[r][t];
            if (v < vote_min) continue;
            bool is_peak = true;
            for (int dr = -1; dr <= 1 && is_peak; ++dr)
                for (int dt = -1; dt <= 1 && is_peak; ++dt) {
                    if (dr == 0 && dt == 0) continue;
                    const int rr = r + dr, tt = t + dt;
                    const int nv = (rr < 0 || rr >= n_rho || tt < 0 || tt >= n_theta)
                                       ? 0
                                       : acc[rr][tt];
                    if (nv > v) is_peak = false;
                    if (nv == v && (dr < 0 || (dr == 0 && dt < 0))) is_peak = false;
                }
            if (is_peak)
                peaks.push_back({r, t, v, (r - center) * rho_res, t * theta_res});
        }
    return peaks;
}

// Full edge detector from first principles: direct 3x3 convolution,
// atan2-based direction binning, plateau-keeps-first thinning, then a
// breadth-first hysteresis closure over the weak candidates.
inline lanepre::EdgeMap canny(const lanepre::ImageU8& in, double th_high) {
    const int w = in.width(), h = in.height();
    const double th_low = th_high / 3.0;
    std::vector<std::vector<long long>> m2(h, std::vector<long long>(w, 0));
    std::vector<std::vector<int>> dir(h, std::vector<int>(w, 0));

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            static const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
            static const int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
            long long gx = 0, gy = 0;
            for (int j = 0; j < 3; ++j)
                for (int i = 0; i < 3; ++i) {
                    const int v = in.at(reflect(x + i - 1, w), reflect(y + j - 1, h));
                    gx += kx[j][i] * v;
                    gy += ky[j][i] * v;
                }
            m2[y][x] = gx * gx + gy * gy;
            double ang = std::atan2(double(gy), double(gx)) * 180.0 / std::acos(-1.0);
            if (ang < 0.0) ang += 180.0;
            if (ang >= 180.0) ang -= 180.0;
            dir[y][x] = ang < 22.5 ? 0 : ang < 67.5 ? 1 : ang < 112.5 ? 2 : ang < 157.5 ? 3 : 0;
        }

    auto mag_at = [&](int x, int y) -> long long {
        return (x < 0 || x >= w || y < 0 || y >= h) ? 0 : m2[y][x];
    };
    // Neighbor pairs along each direction bin, earlier raster neighbor
    // first: EW, NW-SE diagonal, NS, NE-SW diagonal.
    static const int off[4][2][2] = {{{-1, 0}, {1, 0}},
                                     {{-1, -1}, {1, 1}},
                                     {{0, -1}, {0, 1}},
                                     {{1, -1}, {-1, 1}}};
    const double hi2 = th_high * th_high, lo2 = th_low * th_low;
    std::vector<std::vector<int>> cls(h, std::vector<int>(w, 0));
    std::deque<std::pair<int, int>> queue;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const long long m = m2[y][x];
            if (m == 0) continue;
            const int b = dir[y][x];
            if (!(m > mag_at(x + off[b][0][0], y + off[b][0][1]) &&
                  m >= mag_at(x + off[b][1][0], y + off[b][1][1])))
                continue;
            const double md = static_cast<double>(m);
            if (md > hi2) {
                cls[y][x] = 2;
                queue.emplace_back(x, y);
            } else if (md >= lo2) {
                cls[y][x] = 1;
            }
        }

    lanepre::EdgeMap out(w, h);
    while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        if (out.at(x, y)) continue;
        out.at(x, y) = 1;
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                if (cls[ny][nx] != 0 && !out.at(nx, ny)) queue.emplace_back(nx, ny);
            }
    }
    return out;
}

// Direction bin from the raw angle, for checking the integer-only
// quantizer used by the thinning stage.
inline int direction_bin(int gx, int gy) {
    if (gx == 0 && gy == 0) return 0;
    double ang = std::atan2(double(gy), double(gx)) * 180.0 / std::acos(-1.0);
    if (ang < 0.0) ang += 180.0;
    if (ang >= 180.0) ang -= 180.0;
    return ang < 22.5 ? 0 : ang < 67.5 ? 1 : ang < 112.5 ? 2 : ang < 157.5 ? 3 : 0;
}

} // namespace oracles
