#pragma once

#include <vector>

#include "lanepre/image.hpp"

namespace lanepre::geom {

// Triangle with its apex near the vanishing point and the full bottom
// image row as its base. Containment is boundary-inclusive.
struct TriangleRoi {
    // Vertices in pixel coordinates: apex, bottom-left, bottom-right.
    double ax = 0, ay = 0;
    double blx = 0, bly = 0;
    double brx = 0, bry = 0;

    bool contains(double x, double y) const;
};

// Default placement: apex at (width/2, height/4), base corners at the
// ends of the bottom row.
TriangleRoi make_roi(int width, int height, double apex_x_fraction = 0.5,
                     double apex_y_fraction = 0.25);

// Clears edge pixels strictly outside the triangle.
EdgeMap roi_mask(const EdgeMap& edges, const TriangleRoi& roi);

struct HoughParams {
    double rho_resolution = 1.0;   // accumulator bin width, pixels
    double theta_resolution = 1.0; // accumulator bin width, degrees
    int vote_threshold = 3;        // minimum votes for a reported line

    void validate() const;
};

struct HoughLine {
    double rho = 0.0;       // signed distance from origin, pixels
    double theta_deg = 0.0; // [0, 180)
    int votes = 0;
    int rho_index = 0;
    int theta_index = 0;
};

struct LineSet {
    std::vector<HoughLine> lines;
    int count() const { return static_cast<int>(lines.size()); }
};

// Standard rho-theta voting over all set pixels, followed by peak
// extraction: a cell is reported when its votes reach vote_threshold
// and it is a 3x3 local maximum, ties going to the smaller rho index,
// then the smaller theta index. Lines are emitted in accumulator scan
// order (rho, then theta).
LineSet hough_count(const EdgeMap& edges, const HoughParams& params);

} // namespace lanepre::geom
