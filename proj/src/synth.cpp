#include "lanepre/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace lanepre::synth {

void SceneSpec::validate() const {
    if (width < 16 || height < 16)
        throw std::invalid_argument("scene: width and height must be at least 16");
    if (lane_marks < 1 || lane_marks > 3)
        throw std::invalid_argument("scene: lane_marks must be in [1, 3]");
    if (!(mark_width > 0.0))
        throw std::invalid_argument("scene: mark_width must be positive");
    if (!(mark_start_y_fraction > 0.0 && mark_start_y_fraction < 1.0))
        throw std::invalid_argument("scene: mark_start_y_fraction must be in (0, 1)");
    if (mark_dot_count < 1 || mark_dot_pitch < 1)
        throw std::invalid_argument(
            "scene: mark_dot_count and mark_dot_pitch must be positive");
    auto check_intensity = [](int v, const char* name) {
        if (v < 0 || v > 255)
            throw std::invalid_argument(std::string("scene: ") + name +
                                        " must be in [0, 255]");
    };
    check_intensity(mark_intensity, "mark_intensity");
    check_intensity(asphalt_intensity, "asphalt_intensity");
    check_intensity(sky_intensity, "sky_intensity");
    check_intensity(mover_intensity, "mover_intensity");
    check_intensity(reflector_intensity, "reflector_intensity");
    if (mover_size < 0)
        throw std::invalid_argument("scene: mover_size must be non-negative");
    if (mover_size > 0) {
        if (!(mover_start_x_fraction >= 0.0 && mover_start_x_fraction <= 1.0) ||
            !(mover_start_y_fraction >= 0.0 && mover_start_y_fraction <= 1.0))
            throw std::invalid_argument(
                "scene: mover start fractions must be in [0, 1]");
        if (!std::isfinite(mover_velocity_x) || !std::isfinite(mover_velocity_y))
            throw std::invalid_argument("scene: mover velocity must be finite");
    }
    if (reflector_count < 0)
        throw std::invalid_argument("scene: reflector_count must be non-negative");
    if (reflector_count > 0 && (reflector_size < 1 || reflector_spacing < 1))
        throw std::invalid_argument(
            "scene: reflector_size and reflector_spacing must be positive");
    if (noise_sigma < 0.0)
        throw std::invalid_argument("scene: noise_sigma must be non-negative");
    if (rain_density < 0.0)
        throw std::invalid_argument("scene: rain_density must be non-negative");
    if (!(rain_length > 0.0))
        throw std::invalid_argument("scene: rain_length must be positive");
}

namespace {

// Scene geometry shared by the renderer and the ground-truth emitter.
struct Layout {
    double vp_x, vp_y;     // vanishing point
    int horizon_row;       // first asphalt row
    int mark_first_row;    // first row where marks are drawn
    double bottom_y;       // perspective reference row
    std::vector<double> anchors_x; // mark centers at bottom_y, left to right

    Layout(const SceneSpec& spec) {
        vp_x = spec.width / 2.0;
        vp_y = spec.height / 2.0;
        horizon_row = static_cast<int>(vp_y);
        bottom_y = spec.height - 1.0;
        if (spec.mark_style == MarkStyle::Dotted) {
            // Topmost marker row; ground truth treats the lane as
            // absent above it.
            mark_first_row = std::max(
                spec.height - 20 - (spec.mark_dot_count - 1) * spec.mark_dot_pitch,
                horizon_row + 1);
        } else {
            mark_first_row = std::max(
                static_cast<int>(std::floor(spec.mark_start_y_fraction * spec.height + 0.5)),
                horizon_row + 1);
        }
        if (spec.lane_marks == 1) {
            anchors_x.push_back(spec.width / 2.0);
        } else {
            for (int i = 0; i < spec.lane_marks; ++i)
                anchors_x.push_back(spec.width * (0.25 + 0.5 * i / (spec.lane_marks - 1)));
        }
    }

    // Perspective interpolation toward the vanishing point.
    double center_x(double anchor_x, double y) const {
        const double t = (y - vp_y) / (bottom_y - vp_y);
        return vp_x + (anchor_x - vp_x) * t;
    }

    double half_width(const SceneSpec& spec, double y) const {
        const double t = (y - vp_y) / (bottom_y - vp_y);
        return std::max(0.5 * spec.mark_width * t, 0.5);
    }
};

// Deterministic per-frame stream: splitmix64 mixes the clip seed with
// the frame index, then seeds a mersenne twister.
uint64_t mix_seed(uint64_t seed, int frame_index) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<uint64_t>(frame_index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Gaussian {
public:
    explicit Gaussian(uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // Box-Muller on uniforms from the twister; the standard
        // library's normal_distribution is implementation-defined, so
        // the transform is spelled out for cross-toolchain stability.
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
        spare_ = r * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

    double uniform() { return (rng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

constexpr int kRainIntensity = 235;
constexpr int kMarkDotSize = 2; // see the raised-marker comment below

// Stamps a small square of constant intensity, clipped to the image.
void stamp_dot(ImageU8& base, int x0, int y0, int size, int intensity) {
    for (int dy = 0; dy < size; ++dy) {
        const int y = y0 + dy;
        if (y < 0 || y >= base.height()) continue;
        uint8_t* row = base.row(y);
        for (int dx = 0; dx < size; ++dx) {
            const int x = x0 + dx;
            if (x >= 0 && x < base.width()) row[x] = static_cast<uint8_t>(intensity);
        }
    }
}

} // namespace

FrameRgb render_frame(const SceneSpec& spec, int frame_index) {
    spec.validate();
    const Layout layout(spec);
    const int w = spec.width, h = spec.height;

    // Base scene in a single intensity plane.
    ImageU8 base(w, h);
    for (int y = 0; y < h; ++y) {
        uint8_t* row = base.row(y);
        const uint8_t ground =
            static_cast<uint8_t>(y < layout.horizon_row ? spec.sky_intensity
                                                        : spec.asphalt_intensity);
        for (int x = 0; x < w; ++x) row[x] = ground;
        if (spec.mark_style != MarkStyle::Solid || y < layout.mark_first_row) continue;
        for (double anchor : layout.anchors_x) {
            const double cx = layout.center_x(anchor, y);
            const double hw = layout.half_width(spec, y);
            const int x0 = std::max(0, static_cast<int>(std::ceil(cx - hw)));
            const int x1 = std::min(w - 1, static_cast<int>(std::floor(cx + hw)));
            for (int x = x0; x <= x1; ++x)
                row[x] = static_cast<uint8_t>(spec.mark_intensity);
        }
    }

    // Raised markers along each lane line. The 2x2 stamp is load-
    // bearing: Canny reduces it to exactly two edge pixels, so a
    // marker near the detection threshold can only flicker by that
    // much — a solid stripe would recruit its whole boundary through
    // hysteresis instead.
    if (spec.mark_style == MarkStyle::Dotted) {
        for (double anchor : layout.anchors_x) {
            for (int i = 0; i < spec.mark_dot_count; ++i) {
                const int y = h - 20 - i * spec.mark_dot_pitch;
                if (y <= layout.horizon_row) break; // keep markers on the road
                const int cx = static_cast<int>(std::floor(layout.center_x(anchor, y)));
                stamp_dot(base, cx, y, kMarkDotSize, spec.mark_intensity);
            }
        }
    }

    // Worn reflector dots in columns between the lane lines. Same
    // fixed-size stamp, mid intensity: they dominate the line count
    // while the detection threshold is low and drop out cleanly once
    // it clears them.
    if (spec.reflector_count > 0) {
        const int offset = w / 6;
        for (int cx : {w / 2 - offset, w / 2, w / 2 + offset}) {
            for (int i = 0; i < spec.reflector_count; ++i) {
                const int y = h - 30 - i * spec.reflector_spacing;
                if (y <= layout.horizon_row) break;
                stamp_dot(base, cx, y, spec.reflector_size, spec.reflector_intensity);
            }
        }
    }

    // A vehicle passing in the adjacent lane: a bright square on a
    // straight scripted path. While it overlaps the counting region it
    // saturates the line count; its exit from that region is purely
    // geometric, so the frame at which it stops contributing depends
    // on neither the detection threshold nor the noise.
    if (spec.mover_size > 0) {
        const int cx = static_cast<int>(std::lround(
            spec.mover_start_x_fraction * w + spec.mover_velocity_x * frame_index));
        const int cy = static_cast<int>(std::lround(
            spec.mover_start_y_fraction * h + spec.mover_velocity_y * frame_index));
        stamp_dot(base, cx - spec.mover_size / 2, cy - spec.mover_size / 2,
                  spec.mover_size, spec.mover_intensity);
    }

    Gaussian noise(mix_seed(spec.seed, frame_index));

    // Rain streaks composite over the base by coverage.
    ImageF64 coverage(1, 1);
    const int n_streaks = static_cast<int>(std::lround(spec.rain_density));
    const bool has_rain = n_streaks > 0;
    if (has_rain) {
        coverage = ImageF64(w, h);
        for (int s = 0; s < n_streaks; ++s) {
            const double x0 = noise.uniform() * w;
            const double y0 = noise.uniform() * h;
            const double tilt = noise() * 0.17; // radians off vertical
            const double dx = std::sin(tilt), dy = std::cos(tilt);
            for (double t = 0.0; t <= spec.rain_length; t += 0.5) {
                const double px = x0 + dx * t, py = y0 + dy * t;
                const int ix = static_cast<int>(std::floor(px));
                const int iy = static_cast<int>(std::floor(py));
                const double fx = px - ix, fy = py - iy;
                // Bilinear splat gives the streak a soft profile.
                const double wgt[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy,
                                       fx * fy};
                const int xs[4] = {ix, ix + 1, ix, ix + 1};
                const int ys[4] = {iy, iy, iy + 1, iy + 1};
                for (int i = 0; i < 4; ++i) {
                    if (xs[i] < 0 || xs[i] >= w || ys[i] < 0 || ys[i] >= h) continue;
                    double& c = coverage.at(xs[i], ys[i]);
                    c = std::min(1.0, c + wgt[i]);
                }
            }
        }
    }

    // Assemble the frame: identical planes, then independent noise per
    // channel so the planes are not bit-equal copies of one another.
    FrameRgb frame(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double v = base.at(x, y);
            if (has_rain) {
                const double c = coverage.at(x, y);
                if (c > 0.0) v = v + (kRainIntensity - v) * c;
            }
            for (int p = 0; p < 3; ++p) {
                double sample = v;
                if (spec.noise_sigma > 0.0) sample += spec.noise_sigma * noise();
                frame.plane(p).at(x, y) = round_u8(sample);
            }
        }
    }
    return frame;
}

tusimple::LaneRecord ground_truth(const SceneSpec& spec, int frame_index) {
    spec.validate();
    const Layout layout(spec);
    tusimple::LaneRecord record;
    record.h_samples = tusimple::anchor_rows(spec.height);
    record.raw_file = frame_name(frame_index);
    for (double anchor : layout.anchors_x) {
        std::vector<int> lane;
        lane.reserve(record.h_samples.size());
        for (int y : record.h_samples) {
            if (y < layout.mark_first_row || y >= spec.height) {
                lane.push_back(tusimple::kNoLane);
                continue;
            }
            const int x =
                static_cast<int>(std::floor(layout.center_x(anchor, y) + 0.5));
            lane.push_back(x >= 0 && x < spec.width ? x : tusimple::kNoLane);
        }
        record.lanes.push_back(std::move(lane));
    }
    record.validate();
    return record;
}

Clip generate_clip(const SceneSpec& spec, int n_frames) {
    if (n_frames < 1) throw std::invalid_argument("generate_clip: n_frames must be >= 1");
    Clip clip;
    clip.frames.reserve(n_frames);
    clip.ground_truth.reserve(n_frames);
    for (int i = 0; i < n_frames; ++i) {
        clip.frames.push_back(render_frame(spec, i));
        clip.ground_truth.push_back(ground_truth(spec, i));
    }
    return clip;
}

std::string frame_name(int frame_index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "frame_%06d.png", frame_index);
    return buf;
}

} // namespace lanepre::synth
