#include "lanepre/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "lanepre/canny.hpp"

namespace lanepre::pipeline {

std::string to_string(ChannelSource c) {
    switch (c) {
    case ChannelSource::Edge: return "edge";
    case ChannelSource::Blue: return "blue";
    case ChannelSource::Green: return "green";
    case ChannelSource::Red: return "red";
    }
    return "edge";
}

ChannelSource channel_source_from_string(const std::string& name) {
    if (name == "edge") return ChannelSource::Edge;
    if (name == "blue") return ChannelSource::Blue;
    if (name == "green") return ChannelSource::Green;
    if (name == "red") return ChannelSource::Red;
    throw std::invalid_argument("unknown channel source: " + name);
}

void PipelineConfig::validate() const {
    bilateral.validate();
    hough.validate();
    tuner.system.validate();
    if (!(roi.apex_x_fraction >= 0.0 && roi.apex_x_fraction <= 1.0))
        throw std::invalid_argument("config: roi.apex_x_fraction must be in [0, 1]");
    if (!(roi.apex_y_fraction >= 0.0 && roi.apex_y_fraction < 1.0))
        throw std::invalid_argument("config: roi.apex_y_fraction must be in [0, 1)");
    if (line_count_cap < 1)
        throw std::invalid_argument("config: line_count_cap must be >= 1");
    if (!(tuner.clamp_min >= fuzzy::kThresholdMin && tuner.clamp_max <= fuzzy::kThresholdMax &&
          tuner.clamp_min <= tuner.clamp_max))
        throw std::invalid_argument("config: tuner clamp bounds must satisfy 1 <= min <= max <= 1443");
    if (!(tuner.initial_threshold >= tuner.clamp_min &&
          tuner.initial_threshold <= tuner.clamp_max))
        throw std::invalid_argument("config: initial_threshold must lie within the clamp bounds");
}

namespace {

int count_edges(const EdgeMap& edges) {
    int n = 0;
    const uint8_t* p = edges.data();
    for (size_t i = 0; i < edges.size(); ++i) n += p[i] != 0;
    return n;
}

class StageClock {
public:
    double lap_ms() {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

} // namespace

FrameRgb channel_allocate(const FrameRgb& frame, const EdgeMap& edges,
                          const ChannelSpec& spec) {
    if (!edges.same_size(frame.width(), frame.height()))
        throw std::invalid_argument("channel_allocate: frame and edge map sizes differ");
    FrameRgb out(frame.width(), frame.height());
    ImageU8 normalized;
    bool have_normalized = false;
    for (int i = 0; i < 3; ++i) {
        switch (spec[i]) {
        case ChannelSource::Edge:
            if (!have_normalized) {
                normalized = normalize_to_u8(edges);
                have_normalized = true;
            }
            out.plane(i) = normalized;
            break;
        case ChannelSource::Blue: out.plane(i) = frame.blue(); break;
        case ChannelSource::Green: out.plane(i) = frame.green(); break;
        case ChannelSource::Red: out.plane(i) = frame.red(); break;
        }
    }
    return out;
}

FrameResult process_frame(const fuzzy::TunerState& state, const FrameRgb& frame,
                          const PipelineConfig& config) {
    StageClock clock;
    StageClock total_clock;
    FrameTrace trace;
    trace.frame_index = state.frame_index;
    trace.th_high_used = state.th_high;

    const ImageU8 gray = to_grayscale(frame, config.luma, config.backend);
    trace.timings.gray_ms = clock.lap_ms();

    const ImageU8 filtered = filter::bilateral_filter_u8(gray, config.bilateral, config.backend);
    trace.timings.bilateral_ms = clock.lap_ms();

    const EdgeMap edges = edge::canny(filtered, state.th_high);
    trace.timings.canny_ms = clock.lap_ms();
    trace.edge_pixels_pre_roi = count_edges(edges);

    const geom::TriangleRoi roi = geom::make_roi(
        frame.width(), frame.height(), config.roi.apex_x_fraction, config.roi.apex_y_fraction);
    const EdgeMap masked = geom::roi_mask(edges, roi);
    trace.timings.roi_ms = clock.lap_ms();
    trace.edge_pixels_post_roi = count_edges(masked);

    const geom::LineSet lines = geom::hough_count(masked, config.hough);
    trace.timings.hough_ms = clock.lap_ms();
    trace.line_count = std::min(lines.count(), config.line_count_cap);

    const fuzzy::TunerState next = fuzzy::tune(state, trace.line_count, config.tuner.system,
                                               config.tuner.clamp_min, config.tuner.clamp_max);
    trace.delta_applied = next.last_delta;
    trace.timings.fis_ms = clock.lap_ms();

    FrameRgb out = channel_allocate(frame, config.mask_output_edges ? masked : edges,
                                    config.channels);
    trace.timings.allocate_ms = clock.lap_ms();
    trace.timings.total_ms = total_clock.lap_ms();

    return FrameResult{std::move(out), next, trace};
}

fuzzy::TunerState process_clip_stream(const FrameSource& source, const FrameSink& sink,
                                      const PipelineConfig& config) {
    config.validate();
    fuzzy::TunerState state;
    state.th_high = config.tuner.initial_threshold;
    int width = 0, height = 0, n = 0;
    while (auto frame = source()) {
        if (n == 0) {
            width = frame->width();
            height = frame->height();
        } else if (frame->width() != width || frame->height() != height) {
            throw std::runtime_error("process_clip: frame dimensions changed mid-clip");
        }
        FrameResult result = process_frame(state, *frame, config);
        state = result.next_state;
        sink(result.frame, result.trace);
        ++n;
    }
    if (n == 0) throw std::runtime_error("process_clip: no frames found");
    return state;
}

ClipResult process_clip(const std::vector<FrameRgb>& frames, const PipelineConfig& config) {
    ClipResult result;
    size_t i = 0;
    process_clip_stream(
        [&]() -> std::optional<FrameRgb> {
            if (i >= frames.size()) return std::nullopt;
            return frames[i++];
        },
        [&](const FrameRgb& frame, const FrameTrace& trace) {
            result.frames.push_back(frame);
            result.traces.push_back(trace);
        },
        config);
    return result;
}

namespace {

void append_field(std::string& out, const char* key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "\"%s\":%.6f", key, value);
    out += buf;
}

void append_field(std::string& out, const char* key, int value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "\"%s\":%d", key, value);
    out += buf;
}

} // namespace

std::string trace_to_json_line(const FrameTrace& t, bool include_timings) {
    std::string out = "{";
    append_field(out, "frame_index", t.frame_index);
    out += ",";
    append_field(out, "th_high_used", t.th_high_used);
    out += ",";
    append_field(out, "line_count", t.line_count);
    out += ",";
    append_field(out, "delta_applied", t.delta_applied);
    out += ",";
    append_field(out, "edge_pixels_pre_roi", t.edge_pixels_pre_roi);
    out += ",";
    append_field(out, "edge_pixels_post_roi", t.edge_pixels_post_roi);
    if (include_timings) {
        out += ",\"timings_ms\":{";
        append_field(out, "gray", t.timings.gray_ms);
        out += ",";
        append_field(out, "bilateral", t.timings.bilateral_ms);
        out += ",";
        append_field(out, "canny", t.timings.canny_ms);
        out += ",";
        append_field(out, "roi", t.timings.roi_ms);
        out += ",";
        append_field(out, "hough", t.timings.hough_ms);
        out += ",";
        append_field(out, "fis", t.timings.fis_ms);
        out += ",";
        append_field(out, "allocate", t.timings.allocate_ms);
        out += ",";
        append_field(out, "total", t.timings.total_ms);
        out += "}";
    }
    out += "}";
    return out;
}

std::string summary_to_json(const std::vector<FrameTrace>& traces, double final_threshold) {
    StageTimings mean{}, peak{};
    auto fold = [&](double StageTimings::*field) {
        double sum = 0.0, mx = 0.0;
        for (const auto& t : traces) {
            sum += t.timings.*field;
            mx = std::max(mx, t.timings.*field);
        }
        mean.*field = traces.empty() ? 0.0 : sum / static_cast<double>(traces.size());
        peak.*field = mx;
    };
    for (auto field : {&StageTimings::gray_ms, &StageTimings::bilateral_ms,
                       &StageTimings::canny_ms, &StageTimings::roi_ms, &StageTimings::hough_ms,
                       &StageTimings::fis_ms, &StageTimings::allocate_ms,
                       &StageTimings::total_ms})
        fold(field);

    auto timing_block = [](const StageTimings& t) {
        std::string out = "{";
        append_field(out, "gray", t.gray_ms);
        out += ",";
        append_field(out, "bilateral", t.bilateral_ms);
        out += ",";
        append_field(out, "canny", t.canny_ms);
        out += ",";
        append_field(out, "roi", t.roi_ms);
        out += ",";
        append_field(out, "hough", t.hough_ms);
        out += ",";
        append_field(out, "fis", t.fis_ms);
        out += ",";
        append_field(out, "allocate", t.allocate_ms);
        out += ",";
        append_field(out, "total", t.total_ms);
        out += "}";
        return out;
    };

    std::string out = "{";
    append_field(out, "frames", static_cast<int>(traces.size()));
    out += ",";
    append_field(out, "final_threshold", final_threshold);
    out += ",\"mean_ms\":" + timing_block(mean);
    out += ",\"max_ms\":" + timing_block(peak);
    out += "}\n";
    return out;
}

} // namespace lanepre::pipeline
