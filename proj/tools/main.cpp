// Command-line front end: synthesize clips, run the preprocessing
// pipeline over frame sequences, evaluate lane predictions, and dump
// the effective configuration.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lanepre/config.hpp"
#include "lanepre/evaluation.hpp"
#include "lanepre/imageio.hpp"
#include "lanepre/pipeline.hpp"
#include "lanepre/synth.hpp"

namespace fs = std::filesystem;
using namespace lanepre;

namespace {

// Pipeline options shared by `process` and `dump-config`. Flags
// override values loaded from --config, which override the defaults.
struct ConfigCli {
    std::string config_path;
    std::optional<std::string> backend;
    std::optional<double> initial_threshold;
    std::optional<int> kernel_size;
    std::optional<double> sigma_spatial;
    std::optional<double> sigma_intensity;
    std::optional<std::string> border;
    std::optional<double> apex_x_fraction;
    std::optional<double> apex_y_fraction;
    std::optional<double> rho_resolution;
    std::optional<double> theta_resolution;
    std::optional<int> vote_threshold;
    std::optional<int> line_count_cap;
    std::optional<double> clamp_min;
    std::optional<double> clamp_max;
    std::optional<std::string> channels;
    std::optional<bool> mask_output_edges;

    void add_options(CLI::App& app) {
        app.add_option("--config", config_path, "Pipeline config file (JSON)");
        app.add_option("--backend", backend, "Kernel backend: auto, scalar or avx2");
        app.add_option("--initial-threshold", initial_threshold,
                       "Canny high threshold for the first frame");
        app.add_option("--kernel-size", kernel_size, "Bilateral kernel size (odd, >= 3)");
        app.add_option("--sigma-spatial", sigma_spatial, "Bilateral spatial sigma");
        app.add_option("--sigma-intensity", sigma_intensity, "Bilateral intensity sigma");
        app.add_option("--border", border, "Bilateral border mode: mirror or replicate");
        app.add_option("--apex-x-fraction", apex_x_fraction, "ROI apex x as a width fraction");
        app.add_option("--apex-y-fraction", apex_y_fraction, "ROI apex y as a height fraction");
        app.add_option("--rho-resolution", rho_resolution, "Hough rho bin width in pixels");
        app.add_option("--theta-resolution", theta_resolution,
                       "Hough theta bin width in degrees");
        app.add_option("--vote-threshold", vote_threshold, "Hough minimum votes per line");
        app.add_option("--line-count-cap", line_count_cap,
                       "Upper bound on the line count fed to the tuner");
        app.add_option("--clamp-min", clamp_min, "Lower clamp for the tuned threshold");
        app.add_option("--clamp-max", clamp_max, "Upper clamp for the tuned threshold");
        app.add_option("--channels", channels,
                       "Output plane sources, e.g. edge,green,edge (blue,green,red order)");
        app.add_flag("--mask-output-edges,!--no-mask-output-edges", mask_output_edges,
                     "Feed the ROI-masked edge map to channel allocation");
    }

    pipeline::PipelineConfig build() const {
        pipeline::PipelineConfig c = config_path.empty()
                                         ? pipeline::PipelineConfig{}
                                         : config::load_pipeline_config(config_path);
        if (backend) c.backend = backend_from_string(*backend);
        if (initial_threshold) c.tuner.initial_threshold = *initial_threshold;
        if (kernel_size) c.bilateral.kernel_size = *kernel_size;
        if (sigma_spatial) c.bilateral.sigma_spatial = *sigma_spatial;
        if (sigma_intensity) c.bilateral.sigma_intensity = *sigma_intensity;
        if (border)
            c.bilateral.border = *border == "replicate" ? filter::Border::Replicate
                                                        : filter::Border::Mirror;
        if (apex_x_fraction) c.roi.apex_x_fraction = *apex_x_fraction;
        if (apex_y_fraction) c.roi.apex_y_fraction = *apex_y_fraction;
        if (rho_resolution) c.hough.rho_resolution = *rho_resolution;
        if (theta_resolution) c.hough.theta_resolution = *theta_resolution;
        if (vote_threshold) c.hough.vote_threshold = *vote_threshold;
        if (line_count_cap) c.line_count_cap = *line_count_cap;
        if (clamp_min) c.tuner.clamp_min = *clamp_min;
        if (clamp_max) c.tuner.clamp_max = *clamp_max;
        if (channels) {
            std::vector<std::string> names;
            std::string item;
            std::stringstream ss(*channels);
            while (std::getline(ss, item, ',')) names.push_back(item);
            if (names.size() != 3)
                throw std::invalid_argument("--channels needs exactly 3 comma-separated names");
            for (int i = 0; i < 3; ++i)
                c.channels[i] = pipeline::channel_source_from_string(names[i]);
        }
        if (mask_output_edges) c.mask_output_edges = *mask_output_edges;
        c.validate();
        return c;
    }
};

std::vector<fs::path> collect_frames(const std::string& input_dir,
                                     const std::string& list_file) {
    std::vector<fs::path> paths;
    if (!list_file.empty()) {
        std::ifstream in(list_file);
        if (!in) throw std::runtime_error("cannot open list file: " + list_file);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) paths.emplace_back(line);
        }
        return paths; // list order is the clip order
    }
    if (!fs::is_directory(input_dir))
        throw std::runtime_error("input is not a directory: " + input_dir);
    for (const auto& entry : fs::directory_iterator(input_dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().extension() == ".png") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end()); // lexicographic file-name order
    return paths;
}

int cmd_process(const ConfigCli& cli, const std::string& input_dir,
                const std::string& list_file, const std::string& output_dir,
                bool trace_timings) {
    const pipeline::PipelineConfig config = cli.build();
    const std::vector<fs::path> paths = collect_frames(input_dir, list_file);
    if (paths.empty()) {
        std::cerr << "no frames found\n";
        return 1;
    }
    fs::create_directories(output_dir);

    std::vector<pipeline::FrameTrace> traces;
    std::ofstream trace_out(fs::path(output_dir) / "trace.jsonl");
    size_t index = 0;
    const auto state = pipeline::process_clip_stream(
        [&]() -> std::optional<FrameRgb> {
            if (index >= paths.size()) return std::nullopt;
            return io::read_png(paths[index++].string());
        },
        [&](const FrameRgb& frame, const pipeline::FrameTrace& trace) {
            const fs::path out = fs::path(output_dir) / paths[trace.frame_index].filename();
            io::write_png(out.string(), frame);
            trace_out << pipeline::trace_to_json_line(trace, trace_timings) << "\n";
            traces.push_back(trace);
        },
        config);
    trace_out.close();

    std::ofstream summary(fs::path(output_dir) / "summary.json");
    summary << pipeline::summary_to_json(traces, state.th_high);
    std::cout << "processed " << traces.size() << " frames -> " << output_dir << "\n";
    return 0;
}

int cmd_eval(const std::string& pred_path, const std::string& gt_path, double px_threshold,
             double match_threshold) {
    const auto preds = tusimple::parse_lane_records_file(pred_path);
    const auto gts = tusimple::parse_lane_records_file(gt_path);
    const tusimple::EvalResult r =
        tusimple::evaluate_clip(preds, gts, px_threshold, match_threshold);
    std::printf("{\"accuracy\":%.6f,\"precision\":%.6f,\"recall\":%.6f}\n", r.accuracy,
                r.precision, r.recall);
    return 0;
}

int cmd_synth(const synth::SceneSpec& spec, int n_frames, const std::string& output_dir) {
    if (n_frames < 1) throw std::invalid_argument("--frames must be >= 1");
    spec.validate();
    fs::create_directories(output_dir);
    std::ofstream gt_out(fs::path(output_dir) / "ground_truth.jsonl");
    for (int i = 0; i < n_frames; ++i) {
        const FrameRgb frame = synth::render_frame(spec, i);
        io::write_png((fs::path(output_dir) / synth::frame_name(i)).string(), frame);
        gt_out << tusimple::serialize_lane_record(synth::ground_truth(spec, i)) << "\n";
    }
    std::ofstream scene_out(fs::path(output_dir) / "scene.json");
    scene_out << config::scene_to_json_text(spec);
    std::cout << "wrote " << n_frames << " frames -> " << output_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive lane-detection preprocessing pipeline"};
    app.require_subcommand(1);

    // process
    auto* process = app.add_subcommand("process", "Run the pipeline over a clip");
    ConfigCli process_cfg;
    std::string input_dir, list_file, output_dir;
    bool trace_timings = false;
    process->add_option("--input", input_dir, "Directory of PNG frames (file-name order)");
    process->add_option("--list", list_file, "Text file listing frame paths in clip order");
    process->add_option("--output", output_dir, "Output directory")->required();
    process->add_flag("--trace-timings", trace_timings,
                      "Include per-stage wall-times in trace.jsonl (volatile across runs)");
    process_cfg.add_options(*process);

    // eval
    auto* eval = app.add_subcommand("eval", "Score lane predictions against ground truth");
    std::string pred_path, gt_path;
    double px_threshold = tusimple::kDefaultPxThreshold;
    double match_threshold = tusimple::kDefaultMatchThreshold;
    eval->add_option("--pred", pred_path, "Prediction records (JSONL)")->required();
    eval->add_option("--gt", gt_path, "Ground-truth records (JSONL)")->required();
    eval->add_option("--px-threshold", px_threshold, "Max |dx| for a correct point (pixels)");
    eval->add_option("--match-threshold", match_threshold,
                     "Min point accuracy for a true-positive lane");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic road clip");
    std::string spec_path, synth_out;
    int n_frames = 1;
    synth::SceneSpec scene;
    std::optional<int> o_width, o_height, o_marks, o_mark_i, o_asphalt_i, o_sky_i;
    std::optional<int> o_refl_n, o_refl_sz, o_refl_sp, o_refl_i, o_dot_n, o_dot_p;
    std::optional<int> o_mover_sz, o_mover_i;
    std::optional<std::string> o_style;
    std::optional<double> o_mark_w, o_start_frac, o_noise, o_rain_d, o_rain_l;
    std::optional<double> o_mover_fx, o_mover_fy, o_mover_vx, o_mover_vy;
    std::optional<uint64_t> o_seed;
    synth_cmd->add_option("--spec", spec_path, "Scene spec file (JSON)");
    synth_cmd->add_option("--frames", n_frames, "Number of frames")->required();
    synth_cmd->add_option("--output", synth_out, "Output directory")->required();
    synth_cmd->add_option("--width", o_width, "Frame width");
    synth_cmd->add_option("--height", o_height, "Frame height");
    synth_cmd->add_option("--marks", o_marks, "Lane mark count (1-3)");
    synth_cmd->add_option("--mark-style", o_style, "Lane mark style: dotted or solid");
    synth_cmd->add_option("--mark-intensity", o_mark_i, "Mark intensity");
    synth_cmd->add_option("--mark-dot-count", o_dot_n, "Dotted style: markers per line");
    synth_cmd->add_option("--mark-dot-pitch", o_dot_p, "Dotted style: marker pitch, pixels");
    synth_cmd->add_option("--mark-width", o_mark_w, "Solid style: width at the bottom row");
    synth_cmd->add_option("--mark-start-fraction", o_start_frac,
                          "Solid style: height fraction where stripes begin");
    synth_cmd->add_option("--asphalt-intensity", o_asphalt_i, "Asphalt intensity");
    synth_cmd->add_option("--sky-intensity", o_sky_i, "Sky intensity");
    synth_cmd->add_option("--mover-size", o_mover_sz, "Passing-vehicle square side (0 = off)");
    synth_cmd->add_option("--mover-intensity", o_mover_i, "Passing-vehicle intensity");
    synth_cmd->add_option("--mover-start-x-fraction", o_mover_fx,
                          "Passing-vehicle start x as a width fraction");
    synth_cmd->add_option("--mover-start-y-fraction", o_mover_fy,
                          "Passing-vehicle start y as a height fraction");
    synth_cmd->add_option("--mover-velocity-x", o_mover_vx,
                          "Passing-vehicle x velocity, pixels per frame");
    synth_cmd->add_option("--mover-velocity-y", o_mover_vy,
                          "Passing-vehicle y velocity, pixels per frame");
    synth_cmd->add_option("--reflector-count", o_refl_n, "Lane-center reflector dots (0 = off)");
    synth_cmd->add_option("--reflector-size", o_refl_sz, "Reflector dot side, pixels");
    synth_cmd->add_option("--reflector-spacing", o_refl_sp, "Reflector vertical pitch, pixels");
    synth_cmd->add_option("--reflector-intensity", o_refl_i, "Reflector intensity");
    synth_cmd->add_option("--noise-sigma", o_noise, "Gaussian noise sigma");
    synth_cmd->add_option("--rain-density", o_rain_d, "Rain streaks per frame");
    synth_cmd->add_option("--rain-length", o_rain_l, "Rain streak length");
    synth_cmd->add_option("--seed", o_seed, "Random seed");

    // dump-config
    auto* dump = app.add_subcommand("dump-config", "Print the effective pipeline config");
    ConfigCli dump_cfg;
    dump_cfg.add_options(*dump);

    CLI11_PARSE(app, argc, argv);

    try {
        if (process->parsed())
            return cmd_process(process_cfg, input_dir, list_file, output_dir, trace_timings);
        if (eval->parsed()) return cmd_eval(pred_path, gt_path, px_threshold, match_threshold);
        if (synth_cmd->parsed()) {
            if (!spec_path.empty()) scene = config::load_scene_spec(spec_path);
            if (o_width) scene.width = *o_width;
            if (o_height) scene.height = *o_height;
            if (o_marks) scene.lane_marks = *o_marks;
            if (o_style) {
                if (*o_style != "dotted" && *o_style != "solid")
                    throw std::invalid_argument("--mark-style must be dotted or solid");
                scene.mark_style = *o_style == "solid" ? synth::MarkStyle::Solid
                                                       : synth::MarkStyle::Dotted;
            }
            if (o_mark_i) scene.mark_intensity = *o_mark_i;
            if (o_dot_n) scene.mark_dot_count = *o_dot_n;
            if (o_dot_p) scene.mark_dot_pitch = *o_dot_p;
            if (o_mark_w) scene.mark_width = *o_mark_w;
            if (o_start_frac) scene.mark_start_y_fraction = *o_start_frac;
            if (o_asphalt_i) scene.asphalt_intensity = *o_asphalt_i;
            if (o_sky_i) scene.sky_intensity = *o_sky_i;
            if (o_mover_sz) scene.mover_size = *o_mover_sz;
            if (o_mover_i) scene.mover_intensity = *o_mover_i;
            if (o_mover_fx) scene.mover_start_x_fraction = *o_mover_fx;
            if (o_mover_fy) scene.mover_start_y_fraction = *o_mover_fy;
            if (o_mover_vx) scene.mover_velocity_x = *o_mover_vx;
            if (o_mover_vy) scene.mover_velocity_y = *o_mover_vy;
            if (o_refl_n) scene.reflector_count = *o_refl_n;
            if (o_refl_sz) scene.reflector_size = *o_refl_sz;
            if (o_refl_sp) scene.reflector_spacing = *o_refl_sp;
            if (o_refl_i) scene.reflector_intensity = *o_refl_i;
            if (o_noise) scene.noise_sigma = *o_noise;
            if (o_rain_d) scene.rain_density = *o_rain_d;
            if (o_rain_l) scene.rain_length = *o_rain_l;
            if (o_seed) scene.seed = *o_seed;
            return cmd_synth(scene, n_frames, synth_out);
        }
        if (dump->parsed()) {
            std::cout << config::pipeline_to_json_text(dump_cfg.build());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
