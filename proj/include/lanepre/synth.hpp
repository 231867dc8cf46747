#pragma once

#include <cstdint>
#include <vector>

#include "lanepre/evaluation.hpp"
#include "lanepre/image.hpp"

namespace lanepre::synth {

// Lane marks are rendered either as raised markers (small bright dots
// along the lane line) or as solid painted stripes.
enum class MarkStyle { Dotted, Solid };

// Deterministic road-scene generator: straight lane marks converging
// on a vanishing point at mid-height, flat sky and asphalt regions, a
// scripted bright square that crosses the frame like a vehicle
// passing in the adjacent lane, optional columns of worn reflector
// dots, optional per-pixel Gaussian noise and bright rain streaks. A
// given (spec, frame index) pair always renders the same bytes.
//
// The defaults are shaped around how the closed-loop tuner behaves on
// the clip. The steady state must contain nothing that sits near the
// settled threshold: marginal content flickers frame to frame, and
// through Canny hysteresis a single strong pixel can recruit a whole
// low-contrast boundary, spiking the Hough count. So the steady-state
// content is only the bright raised markers — isolated dots whose
// Canny response is a stable pixel pair, giving a small, repeatable
// count — while the horizon step and the sensor noise sit far below
// the settled threshold. The passing vehicle is what gets the loop to
// that threshold: it holds the line count high while it is inside the
// counting region, one +4 threshold step per frame, and then slides
// out of the region geometrically. Unlike any fading or mid-contrast
// content, its exit point does not depend on the noise, so it leaves
// no marginal tail behind for the steady state to trip over.
struct SceneSpec {
    int width = 1280;
    int height = 720;
    int lane_marks = 2;                  // 1..3
    MarkStyle mark_style = MarkStyle::Dotted;
    int mark_intensity = 255;
    int mark_dot_count = 5;              // dotted style: markers per lane line
    int mark_dot_pitch = 28;             //   vertical pitch, pixels
    double mark_width = 12.0;            // solid style: width at the bottom row
    double mark_start_y_fraction = 0.62; //   stripes begin below this row
    int asphalt_intensity = 60;
    int sky_intensity = 64;
    int mover_size = 20;                 // passing vehicle square side; 0 disables
    int mover_intensity = 255;
    double mover_start_x_fraction = 0.42;
    double mover_start_y_fraction = 0.60;
    double mover_velocity_x = -28.0;     // pixels per frame
    double mover_velocity_y = 9.0;
    int reflector_count = 0;             // worn dots per column; 0 disables
    int reflector_size = 2;              // square side, pixels
    int reflector_spacing = 14;          // vertical pitch, pixels
    int reflector_intensity = 104;
    double noise_sigma = 0.0;
    double rain_density = 0.0;           // streaks per frame
    double rain_length = 40.0;           // pixels
    uint64_t seed = 1;

    void validate() const;
};

struct Clip {
    std::vector<FrameRgb> frames;
    std::vector<tusimple::LaneRecord> ground_truth; // one record per frame
};

// Renders one frame. Noise and rain are drawn from a generator seeded
// by (spec.seed, frame_index) only, so frames can be produced in any
// order or in parallel.
FrameRgb render_frame(const SceneSpec& spec, int frame_index);

// Ground truth for one frame: lane x positions at the standard anchor
// rows scaled to spec.height, -2 above the first drawn mark row.
tusimple::LaneRecord ground_truth(const SceneSpec& spec, int frame_index);

Clip generate_clip(const SceneSpec& spec, int n_frames);

// Frame file name used by both the generator and the CLI:
// frame_000000.png, frame_000001.png, ...
std::string frame_name(int frame_index);

} // namespace lanepre::synth
