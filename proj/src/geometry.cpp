#include "lanepre/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lanepre::geom {

namespace {

double cross(double ox, double oy, double ax, double ay, double bx, double by) {
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

} // namespace

bool TriangleRoi::contains(double x, double y) const {
    const double d1 = cross(ax, ay, blx, bly, x, y);
    const double d2 = cross(blx, bly, brx, bry, x, y);
    const double d3 = cross(brx, bry, ax, ay, x, y);
    const bool any_neg = d1 < 0 || d2 < 0 || d3 < 0;
    const bool any_pos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(any_neg && any_pos); // boundary (a zero cross) is inside
}

TriangleRoi make_roi(int width, int height, double apex_x_fraction,
                     double apex_y_fraction) {
    if (width < 2 || height < 2)
        throw std::invalid_argument("roi: image must be at least 2x2");
    if (!(apex_x_fraction >= 0.0 && apex_x_fraction <= 1.0))
        throw std::invalid_argument("roi: apex_x_fraction must be in [0, 1]");
    if (!(apex_y_fraction >= 0.0))
        throw std::invalid_argument("roi: apex_y_fraction must be non-negative");
    TriangleRoi roi;
    roi.ax = apex_x_fraction * width;
    roi.ay = apex_y_fraction * height;
    roi.blx = 0;
    roi.bly = height - 1;
    roi.brx = width - 1;
    roi.bry = height - 1;
    if (roi.ax > width - 1) roi.ax = width - 1;
    if (!(roi.ay < roi.bly))
        throw std::invalid_argument("roi: apex must lie strictly above the base");
    return roi;
}

EdgeMap roi_mask(const EdgeMap& edges, const TriangleRoi& roi) {
    EdgeMap out = edges;
    for (int y = 0; y < out.height(); ++y) {
        uint8_t* row = out.row(y);
        for (int x = 0; x < out.width(); ++x)
            if (row[x] && !roi.contains(x, y)) row[x] = 0;
    }
    return out;
}

void HoughParams::validate() const {
    if (!(rho_resolution > 0.0))
        throw std::invalid_argument("hough: rho_resolution must be positive");
    if (!(theta_resolution > 0.0 && theta_resolution <= 180.0))
        throw std::invalid_argument("hough: theta_resolution must be in (0, 180]");
    if (vote_threshold < 1)
        throw std::invalid_argument("hough: vote_threshold must be >= 1");
}

LineSet hough_count(const EdgeMap& edges, const HoughParams& params) {
    params.validate();
    const int w = edges.width(), h = edges.height();
    const double diag = std::hypot(static_cast<double>(w), static_cast<double>(h));
    const int center = static_cast<int>(std::ceil(diag / params.rho_resolution));
    const int n_rho = 2 * center + 1;
    const int n_theta =
        static_cast<int>(std::ceil(180.0 / params.theta_resolution - 1e-9));

    std::vector<double> cos_t(n_theta), sin_t(n_theta);
    constexpr double kPi = 3.14159265358979323846;
    for (int t = 0; t < n_theta; ++t) {
        const double rad = t * params.theta_resolution * kPi / 180.0;
        cos_t[t] = std::cos(rad);
        sin_t[t] = std::sin(rad);
    }

    std::vector<int> acc(static_cast<size_t>(n_rho) * n_theta, 0);
    for (int y = 0; y < h; ++y) {
        const uint8_t* row = edges.row(y);
        for (int x = 0; x < w; ++x) {
            if (!row[x]) continue;
            for (int t = 0; t < n_theta; ++t) {
                const double rho = x * cos_t[t] + y * sin_t[t];
                const int bin =
                    static_cast<int>(std::floor(rho / params.rho_resolution + 0.5)) + center;
                acc[static_cast<size_t>(bin) * n_theta + t]++;
            }
        }
    }

    auto votes_at = [&](int r, int t) -> int {
        if (r < 0 || r >= n_rho || t < 0 || t >= n_theta) return 0;
        return acc[static_cast<size_t>(r) * n_theta + t];
    };

    LineSet result;
    for (int r = 0; r < n_rho; ++r) {
        for (int t = 0; t < n_theta; ++t) {
            const int v = acc[static_cast<size_t>(r) * n_theta + t];
            if (v < params.vote_threshold) continue;
            bool peak = true;
            for (int dr = -1; dr <= 1 && peak; ++dr) {
                for (int dt = -1; dt <= 1 && peak; ++dt) {
                    if (dr == 0 && dt == 0) continue;
                    const int nv = votes_at(r + dr, t + dt);
                    if (nv > v) peak = false;
                    // Equal-vote plateaus report only their smallest
                    // (rho, theta) cell.
                    else if (nv == v && (dr < 0 || (dr == 0 && dt < 0))) peak = false;
                }
            }
            if (!peak) continue;
            HoughLine line;
            line.rho = (r - center) * params.rho_resolution;
            line.theta_deg = t * params.theta_resolution;
            line.votes = v;
            line.rho_index = r;
            line.theta_index = t;
            result.lines.push_back(line);
        }
    }
    return result;
}

} // namespace lanepre::geom
