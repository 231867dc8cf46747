#include <doctest.h>

#include <cmath>

#include "lanepre/synth.hpp"

using namespace lanepre;
using synth::SceneSpec;

namespace {

SceneSpec quiet_scene() {
    SceneSpec s;
    s.width = 320;
    s.height = 180;
    s.mover_size = 0;
    s.noise_sigma = 0.0;
    return s;
}

} // namespace

TEST_CASE("scene validation names the offending field") {
    SceneSpec s = quiet_scene();
    s.lane_marks = 4;
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("lane_marks"),
                         std::invalid_argument);
    s = quiet_scene();
    s.mark_intensity = 300;
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("mark_intensity"),
                         std::invalid_argument);
    s = quiet_scene();
    s.noise_sigma = -1.0;
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("noise_sigma"),
                         std::invalid_argument);
    s = quiet_scene();
    s.mover_size = -2;
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("mover_size"),
                         std::invalid_argument);
    s = quiet_scene();
    s.mover_size = 8;
    s.mover_start_x_fraction = 1.5;
    CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("mover"), std::invalid_argument);
    CHECK_NOTHROW(SceneSpec{}.validate());
}

TEST_CASE("rendering is deterministic in (spec, frame)") {
    SceneSpec s;
    s.width = 320;
    s.height = 180;
    s.noise_sigma = 5.0;
    s.rain_density = 3.0;
    s.seed = 42;
    CHECK(synth::render_frame(s, 7) == synth::render_frame(s, 7));
    CHECK_FALSE(synth::render_frame(s, 7) == synth::render_frame(s, 8));
    s.seed = 43;
    CHECK_FALSE(synth::render_frame(s, 7) == synth::render_frame(SceneSpec{s}, 8));
}

TEST_CASE("a noiseless static scene renders identical frames") {
    const SceneSpec s = quiet_scene();
    const auto clip = synth::generate_clip(s, 2);
    CHECK(clip.frames[0] == clip.frames[1]);
}

TEST_CASE("the moving square makes consecutive frames differ") {
    SceneSpec s = quiet_scene();
    s.mover_size = 12;
    const auto clip = synth::generate_clip(s, 2);
    CHECK_FALSE(clip.frames[0] == clip.frames[1]);
}

TEST_CASE("the mover paints a square of its intensity at the scripted center") {
    SceneSpec s = quiet_scene();
    s.mover_size = 8;
    s.mover_intensity = 222;
    s.mover_start_x_fraction = 0.5;
    s.mover_start_y_fraction = 0.5;
    s.mover_velocity_x = -3.0;
    s.mover_velocity_y = 2.0;
    for (int frame : {0, 3}) {
        const FrameRgb f = synth::render_frame(s, frame);
        const int cx = static_cast<int>(std::lround(0.5 * s.width + s.mover_velocity_x * frame));
        const int cy = static_cast<int>(std::lround(0.5 * s.height + s.mover_velocity_y * frame));
        for (int y = cy - 4; y < cy + 4; ++y)
            for (int x = cx - 4; x < cx + 4; ++x) CHECK(f.green().at(x, y) == 222);
        CHECK(f.green().at(cx - 5, cy) != 222);
        CHECK(f.green().at(cx + 4, cy) != 222);
    }
}

TEST_CASE("ground truth carries one lane per mark on the rendered centers") {
    for (int marks : {1, 2, 3}) {
        SceneSpec s = quiet_scene();
        s.lane_marks = marks;
        const auto gt = synth::ground_truth(s, 0);
        CHECK(static_cast<int>(gt.lanes.size()) == marks);
        CHECK(gt.raw_file == synth::frame_name(0));
        CHECK_NOTHROW(gt.validate());
    }
}

TEST_CASE("ground truth points follow the vanishing-point interpolation") {
    SceneSpec s = quiet_scene();
    const auto gt = synth::ground_truth(s, 0);
    const double vpx = s.width / 2.0, vpy = s.height / 2.0;
    const double bottom = s.height - 1.0;
    const std::vector<double> anchors = {0.25 * s.width, 0.75 * s.width};
    REQUIRE(gt.lanes.size() == 2);
    for (size_t lane = 0; lane < 2; ++lane) {
        bool saw_valid = false;
        for (size_t i = 0; i < gt.h_samples.size(); ++i) {
            const int y = gt.h_samples[i];
            const int x = gt.lanes[lane][i];
            if (x == tusimple::kNoLane) continue;
            saw_valid = true;
            const double t = (y - vpy) / (bottom - vpy);
            const double cx = vpx + (anchors[lane] - vpx) * t;
            CHECK(x == static_cast<int>(std::floor(cx + 0.5)));
        }
        CHECK(saw_valid);
    }
}

TEST_CASE("ground truth is absent above the first marker row") {
    SceneSpec s = quiet_scene();
    const auto gt = synth::ground_truth(s, 0);
    const int first_row =
        std::max(s.height - 20 - (s.mark_dot_count - 1) * s.mark_dot_pitch, s.height / 2 + 1);
    for (size_t i = 0; i < gt.h_samples.size(); ++i)
        if (gt.h_samples[i] < first_row)
            for (const auto& lane : gt.lanes) CHECK(lane[i] == tusimple::kNoLane);
}

TEST_CASE("dotted marks stamp bright pixels on the lane line") {
    SceneSpec s = quiet_scene();
    const FrameRgb f = synth::render_frame(s, 0);
    // Bottom markers: 2x2 squares at y = height - 20.
    const auto gt = synth::ground_truth(s, 0);
    int bright = 0;
    for (int x = 0; x < s.width; ++x) bright += f.green().at(x, s.height - 20) == 255;
    CHECK(bright == 4); // two marks, two pixels wide each
}

TEST_CASE("solid marks paint stripes that widen toward the camera") {
    SceneSpec s = quiet_scene();
    s.mark_style = synth::MarkStyle::Solid;
    s.mark_width = 12.0;
    const FrameRgb f = synth::render_frame(s, 0);
    auto row_width = [&](int y) {
        int n = 0;
        for (int x = 0; x < s.width / 2; ++x) n += f.green().at(x, y) == 255;
        return n;
    };
    const int top = static_cast<int>(s.mark_start_y_fraction * s.height) + 2;
    CHECK(row_width(s.height - 1) >= row_width(top));
    CHECK(row_width(s.height - 1) >= 10);
    CHECK(row_width(top - 40) == 0); // above the stripe start
}

TEST_CASE("reflector columns appear only when requested") {
    SceneSpec plain = quiet_scene();
    SceneSpec with = plain;
    with.reflector_count = 4;
    const FrameRgb a = synth::render_frame(plain, 0);
    const FrameRgb b = synth::render_frame(with, 0);
    CHECK_FALSE(a == b);
    int reflector_px = 0;
    for (int y = 0; y < with.height; ++y)
        for (int x = 0; x < with.width; ++x)
            reflector_px += b.green().at(x, y) == with.reflector_intensity;
    CHECK(reflector_px == 3 * 4 * 2 * 2); // three columns of four 2x2 dots
}

TEST_CASE("rain streaks brighten pixels without touching determinism") {
    SceneSpec s = quiet_scene();
    s.rain_density = 5.0;
    const FrameRgb a = synth::render_frame(s, 0);
    const FrameRgb b = synth::render_frame(s, 0);
    CHECK(a == b);
    CHECK_FALSE(a == synth::render_frame(quiet_scene(), 0));
}

TEST_CASE("generate_clip pairs frames with ground truth and validates counts") {
    const auto clip = synth::generate_clip(quiet_scene(), 3);
    CHECK(clip.frames.size() == 3);
    CHECK(clip.ground_truth.size() == 3);
    CHECK(clip.ground_truth[2].raw_file == "frame_000002.png");
    CHECK_THROWS_AS(synth::generate_clip(quiet_scene(), 0), std::invalid_argument);
}

TEST_CASE("frame names are zero-padded and stable") {
    CHECK(synth::frame_name(0) == "frame_000000.png");
    CHECK(synth::frame_name(12345) == "frame_012345.png");
}
