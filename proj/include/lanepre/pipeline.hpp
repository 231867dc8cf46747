#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lanepre/backend.hpp"
#include "lanepre/bilateral.hpp"
#include "lanepre/fuzzy.hpp"
#include "lanepre/geometry.hpp"
#include "lanepre/gray.hpp"
#include "lanepre/image.hpp"

namespace lanepre::pipeline {

// What each output plane carries: the normalized edge map or one of
// the original planes copied bit-exactly.
enum class ChannelSource { Edge, Blue, Green, Red };

using ChannelSpec = std::array<ChannelSource, 3>;

// Default allocation: edges replace blue and red, green passes through.
inline constexpr ChannelSpec kDefaultChannelSpec = {
    ChannelSource::Edge, ChannelSource::Green, ChannelSource::Edge};

std::string to_string(ChannelSource c);
ChannelSource channel_source_from_string(const std::string& name);

struct RoiConfig {
    double apex_x_fraction = 0.5;
    double apex_y_fraction = 0.25;
};

struct TunerConfig {
    fuzzy::FuzzySystem system = fuzzy::default_fuzzy_system();
    double initial_threshold = 1.0;
    double clamp_min = fuzzy::kThresholdMin;
    double clamp_max = fuzzy::kThresholdMax;
};

struct PipelineConfig {
    Backend backend = Backend::Auto;
    LumaWeights luma;
    filter::BilateralParams bilateral;
    RoiConfig roi;
    geom::HoughParams hough;
    int line_count_cap = 1000;
    TunerConfig tuner;
    ChannelSpec channels = kDefaultChannelSpec;
    // When true, channel allocation uses the ROI-masked edge map
    // instead of the full-frame one (the tuning loop always uses the
    // masked map).
    bool mask_output_edges = false;

    void validate() const;
};

struct StageTimings {
    double gray_ms = 0.0;
    double bilateral_ms = 0.0;
    double canny_ms = 0.0;
    double roi_ms = 0.0;
    double hough_ms = 0.0;
    double fis_ms = 0.0;
    double allocate_ms = 0.0;
    double total_ms = 0.0;
};

// Per-frame observability record.
struct FrameTrace {
    int frame_index = 0;
    double th_high_used = 0.0;
    int line_count = 0;       // capped count delivered to the tuner
    double delta_applied = 0.0;
    int edge_pixels_pre_roi = 0;
    int edge_pixels_post_roi = 0;
    StageTimings timings;
};

struct FrameResult {
    FrameRgb frame;
    fuzzy::TunerState next_state;
    FrameTrace trace;
};

// Replaces the selected planes with the normalized edge map.
FrameRgb channel_allocate(const FrameRgb& frame, const EdgeMap& edges,
                          const ChannelSpec& spec);

// One step of the closed loop: grayscale -> bilateral -> Canny at the
// threshold carried in `state` -> ROI mask -> Hough line count ->
// fuzzy update producing the next state. The count measured on frame
// N only affects frame N+1.
FrameResult process_frame(const fuzzy::TunerState& state, const FrameRgb& frame,
                          const PipelineConfig& config);

struct ClipResult {
    std::vector<FrameRgb> frames;
    std::vector<FrameTrace> traces;
};

// Folds process_frame over a clip with a fresh tuner state (threshold
// = initial_threshold, frame 0). Throws on an empty clip or a
// mid-clip dimension change.
ClipResult process_clip(const std::vector<FrameRgb>& frames, const PipelineConfig& config);

// Streaming variant for long clips: `source` returns frames until
// nullopt; `sink` receives each processed frame and its trace.
// Returns the tuner state after the last frame.
using FrameSource = std::function<std::optional<FrameRgb>()>;
using FrameSink = std::function<void(const FrameRgb&, const FrameTrace&)>;

fuzzy::TunerState process_clip_stream(const FrameSource& source, const FrameSink& sink,
                                      const PipelineConfig& config);

// Fixed-precision (6 decimal places) serialization used for
// trace.jsonl and summary.json. Wall-times vary run to run, so trace
// lines include them only on request, keeping default traces
// byte-diffable across runs; summaries always carry timing stats.
std::string trace_to_json_line(const FrameTrace& trace, bool include_timings = false);
std::string summary_to_json(const std::vector<FrameTrace>& traces, double final_threshold);

} // namespace lanepre::pipeline
