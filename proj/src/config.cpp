#include "lanepre/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lanepre::config {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok)
            throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
    }
}

ordered_json mf_to_json(const fuzzy::MembershipFunction& mf) {
    ordered_json j;
    j["label"] = mf.label;
    if (mf.a == -kInf) {
        j["kind"] = "open_left";
        j["points"] = {mf.c, mf.d};
    } else if (mf.d == kInf) {
        j["kind"] = "open_right";
        j["points"] = {mf.a, mf.b};
    } else if (mf.b == mf.c) {
        j["kind"] = "triangle";
        j["points"] = {mf.a, mf.b, mf.d};
    } else {
        j["kind"] = "trapezoid";
        j["points"] = {mf.a, mf.b, mf.c, mf.d};
    }
    return j;
}

fuzzy::MembershipFunction mf_from_json(const json& j, const std::string& where) {
    reject_unknown_keys(j, {"label", "kind", "points"}, where);
    const std::string label = j.at("label").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    const std::vector<double> pts = j.at("points").get<std::vector<double>>();
    auto need = [&](size_t n) {
        if (pts.size() != n)
            throw std::invalid_argument("config: membership function '" + label + "' kind '" +
                                        kind + "' needs " + std::to_string(n) + " points");
    };
    fuzzy::MembershipFunction mf;
    if (kind == "triangle") {
        need(3);
        mf = fuzzy::MembershipFunction::triangle(label, pts[0], pts[1], pts[2]);
    } else if (kind == "trapezoid") {
        need(4);
        mf = fuzzy::MembershipFunction::trapezoid(label, pts[0], pts[1], pts[2], pts[3]);
    } else if (kind == "open_left") {
        need(2);
        mf = fuzzy::MembershipFunction::open_left(label, pts[0], pts[1]);
    } else if (kind == "open_right") {
        need(2);
        mf = fuzzy::MembershipFunction::open_right(label, pts[0], pts[1]);
    } else {
        throw std::invalid_argument("config: unknown membership function kind '" + kind +
                                    "' in " + where);
    }
    mf.validate();
    return mf;
}

std::string border_to_string(filter::Border b) {
    return b == filter::Border::Mirror ? "mirror" : "replicate";
}

filter::Border border_from_string(const std::string& name) {
    if (name == "mirror") return filter::Border::Mirror;
    if (name == "replicate") return filter::Border::Replicate;
    throw std::invalid_argument("config: unknown border mode '" + name + "'");
}

} // namespace

std::string pipeline_to_json_text(const pipeline::PipelineConfig& c) {
    ordered_json j;
    j["backend"] = to_string(c.backend);
    j["luma_weights"] = {{"r", c.luma.r}, {"g", c.luma.g}, {"b", c.luma.b}};
    j["bilateral"] = {{"kernel_size", c.bilateral.kernel_size},
                      {"sigma_spatial", c.bilateral.sigma_spatial},
                      {"sigma_intensity", c.bilateral.sigma_intensity},
                      {"border", border_to_string(c.bilateral.border)}};
    j["roi"] = {{"apex_x_fraction", c.roi.apex_x_fraction},
                {"apex_y_fraction", c.roi.apex_y_fraction}};
    j["hough"] = {{"rho_resolution", c.hough.rho_resolution},
                  {"theta_resolution", c.hough.theta_resolution},
                  {"vote_threshold", c.hough.vote_threshold}};
    j["line_count_cap"] = c.line_count_cap;

    ordered_json tuner;
    tuner["initial_threshold"] = c.tuner.initial_threshold;
    tuner["clamp_min"] = c.tuner.clamp_min;
    tuner["clamp_max"] = c.tuner.clamp_max;
    tuner["defuzz"] = {{"samples", c.tuner.system.samples},
                       {"domain_min", c.tuner.system.domain_min},
                       {"domain_max", c.tuner.system.domain_max}};
    tuner["input_mfs"] = ordered_json::array();
    for (const auto& mf : c.tuner.system.inputs) tuner["input_mfs"].push_back(mf_to_json(mf));
    tuner["output_mfs"] = ordered_json::array();
    for (const auto& mf : c.tuner.system.outputs) tuner["output_mfs"].push_back(mf_to_json(mf));
    tuner["rules"] = ordered_json::array();
    for (const auto& r : c.tuner.system.rules)
        tuner["rules"].push_back({{"if", r.if_input}, {"then", r.then_output}});
    j["tuner"] = tuner;

    j["channels"] = {pipeline::to_string(c.channels[0]), pipeline::to_string(c.channels[1]),
                     pipeline::to_string(c.channels[2])};
    j["mask_output_edges"] = c.mask_output_edges;
    return j.dump(2) + "\n";
}

pipeline::PipelineConfig pipeline_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: root must be an object");

    pipeline::PipelineConfig c; // file values overlay the defaults
    reject_unknown_keys(j,
                        {"backend", "luma_weights", "bilateral", "roi", "hough",
                         "line_count_cap", "tuner", "channels", "mask_output_edges"},
                        "root");

    if (j.contains("backend")) c.backend = backend_from_string(j["backend"].get<std::string>());
    if (j.contains("luma_weights")) {
        const json& l = j["luma_weights"];
        reject_unknown_keys(l, {"r", "g", "b"}, "luma_weights");
        if (l.contains("r")) c.luma.r = l["r"].get<double>();
        if (l.contains("g")) c.luma.g = l["g"].get<double>();
        if (l.contains("b")) c.luma.b = l["b"].get<double>();
    }
    if (j.contains("bilateral")) {
        const json& b = j["bilateral"];
        reject_unknown_keys(b, {"kernel_size", "sigma_spatial", "sigma_intensity", "border"},
                            "bilateral");
        if (b.contains("kernel_size")) c.bilateral.kernel_size = b["kernel_size"].get<int>();
        if (b.contains("sigma_spatial"))
            c.bilateral.sigma_spatial = b["sigma_spatial"].get<double>();
        if (b.contains("sigma_intensity"))
            c.bilateral.sigma_intensity = b["sigma_intensity"].get<double>();
        if (b.contains("border"))
            c.bilateral.border = border_from_string(b["border"].get<std::string>());
    }
    if (j.contains("roi")) {
        const json& r = j["roi"];
        reject_unknown_keys(r, {"apex_x_fraction", "apex_y_fraction"}, "roi");
        if (r.contains("apex_x_fraction"))
            c.roi.apex_x_fraction = r["apex_x_fraction"].get<double>();
        if (r.contains("apex_y_fraction"))
            c.roi.apex_y_fraction = r["apex_y_fraction"].get<double>();
    }
    if (j.contains("hough")) {
        const json& h = j["hough"];
        reject_unknown_keys(h, {"rho_resolution", "theta_resolution", "vote_threshold"},
                            "hough");
        if (h.contains("rho_resolution"))
            c.hough.rho_resolution = h["rho_resolution"].get<double>();
        if (h.contains("theta_resolution"))
            c.hough.theta_resolution = h["theta_resolution"].get<double>();
        if (h.contains("vote_threshold")) c.hough.vote_threshold = h["vote_threshold"].get<int>();
    }
    if (j.contains("line_count_cap")) c.line_count_cap = j["line_count_cap"].get<int>();
    if (j.contains("tuner")) {
        const json& t = j["tuner"];
        reject_unknown_keys(
            t, {"initial_threshold", "clamp_min", "clamp_max", "defuzz", "input_mfs",
                "output_mfs", "rules"},
            "tuner");
        if (t.contains("initial_threshold"))
            c.tuner.initial_threshold = t["initial_threshold"].get<double>();
        if (t.contains("clamp_min")) c.tuner.clamp_min = t["clamp_min"].get<double>();
        if (t.contains("clamp_max")) c.tuner.clamp_max = t["clamp_max"].get<double>();
        if (t.contains("defuzz")) {
            const json& d = t["defuzz"];
            reject_unknown_keys(d, {"samples", "domain_min", "domain_max"}, "tuner.defuzz");
            if (d.contains("samples")) c.tuner.system.samples = d["samples"].get<int>();
            if (d.contains("domain_min"))
                c.tuner.system.domain_min = d["domain_min"].get<double>();
            if (d.contains("domain_max"))
                c.tuner.system.domain_max = d["domain_max"].get<double>();
        }
        if (t.contains("input_mfs")) {
            c.tuner.system.inputs.clear();
            for (const auto& mf : t["input_mfs"])
                c.tuner.system.inputs.push_back(mf_from_json(mf, "tuner.input_mfs"));
        }
        if (t.contains("output_mfs")) {
            c.tuner.system.outputs.clear();
            for (const auto& mf : t["output_mfs"])
                c.tuner.system.outputs.push_back(mf_from_json(mf, "tuner.output_mfs"));
        }
        if (t.contains("rules")) {
            c.tuner.system.rules.clear();
            for (const auto& r : t["rules"]) {
                reject_unknown_keys(r, {"if", "then"}, "tuner.rules");
                c.tuner.system.rules.push_back(
                    {r.at("if").get<std::string>(), r.at("then").get<std::string>()});
            }
        }
    }
    if (j.contains("channels")) {
        const auto names = j["channels"].get<std::vector<std::string>>();
        if (names.size() != 3)
            throw std::invalid_argument("config: channels must list exactly 3 sources");
        for (int i = 0; i < 3; ++i)
            c.channels[i] = pipeline::channel_source_from_string(names[i]);
    }
    if (j.contains("mask_output_edges")) c.mask_output_edges = j["mask_output_edges"].get<bool>();

    c.validate();
    return c;
}

pipeline::PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return pipeline_from_json_text(ss.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::string scene_to_json_text(const synth::SceneSpec& s) {
    ordered_json j;
    j["width"] = s.width;
    j["height"] = s.height;
    j["lane_marks"] = s.lane_marks;
    j["mark_style"] = s.mark_style == synth::MarkStyle::Solid ? "solid" : "dotted";
    j["mark_intensity"] = s.mark_intensity;
    j["mark_dot_count"] = s.mark_dot_count;
    j["mark_dot_pitch"] = s.mark_dot_pitch;
    j["mark_width"] = s.mark_width;
    j["mark_start_y_fraction"] = s.mark_start_y_fraction;
    j["asphalt_intensity"] = s.asphalt_intensity;
    j["sky_intensity"] = s.sky_intensity;
    j["mover_size"] = s.mover_size;
    j["mover_intensity"] = s.mover_intensity;
    j["mover_start_x_fraction"] = s.mover_start_x_fraction;
    j["mover_start_y_fraction"] = s.mover_start_y_fraction;
    j["mover_velocity_x"] = s.mover_velocity_x;
    j["mover_velocity_y"] = s.mover_velocity_y;
    j["reflector_count"] = s.reflector_count;
    j["reflector_size"] = s.reflector_size;
    j["reflector_spacing"] = s.reflector_spacing;
    j["reflector_intensity"] = s.reflector_intensity;
    j["noise_sigma"] = s.noise_sigma;
    j["rain_density"] = s.rain_density;
    j["rain_length"] = s.rain_length;
    j["seed"] = s.seed;
    return j.dump(2) + "\n";
}

synth::SceneSpec scene_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scene spec: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("scene spec: root must be an object");
    reject_unknown_keys(j,
                        {"width", "height", "lane_marks", "mark_style", "mark_intensity",
                         "mark_dot_count", "mark_dot_pitch", "mark_width",
                         "mark_start_y_fraction", "asphalt_intensity", "sky_intensity",
                         "mover_size", "mover_intensity", "mover_start_x_fraction",
                         "mover_start_y_fraction", "mover_velocity_x", "mover_velocity_y",
                         "reflector_count", "reflector_size", "reflector_spacing",
                         "reflector_intensity", "noise_sigma", "rain_density",
                         "rain_length", "seed"},
                        "scene spec");
    synth::SceneSpec s;
    if (j.contains("width")) s.width = j["width"].get<int>();
    if (j.contains("height")) s.height = j["height"].get<int>();
    if (j.contains("lane_marks")) s.lane_marks = j["lane_marks"].get<int>();
    if (j.contains("mark_style")) {
        const std::string style = j["mark_style"].get<std::string>();
        if (style == "dotted")
            s.mark_style = synth::MarkStyle::Dotted;
        else if (style == "solid")
            s.mark_style = synth::MarkStyle::Solid;
        else
            throw std::invalid_argument("scene spec: mark_style must be dotted or solid");
    }
    if (j.contains("mark_intensity")) s.mark_intensity = j["mark_intensity"].get<int>();
    if (j.contains("mark_dot_count")) s.mark_dot_count = j["mark_dot_count"].get<int>();
    if (j.contains("mark_dot_pitch")) s.mark_dot_pitch = j["mark_dot_pitch"].get<int>();
    if (j.contains("mark_width")) s.mark_width = j["mark_width"].get<double>();
    if (j.contains("mark_start_y_fraction"))
        s.mark_start_y_fraction = j["mark_start_y_fraction"].get<double>();
    if (j.contains("asphalt_intensity")) s.asphalt_intensity = j["asphalt_intensity"].get<int>();
    if (j.contains("sky_intensity")) s.sky_intensity = j["sky_intensity"].get<int>();
    if (j.contains("mover_size")) s.mover_size = j["mover_size"].get<int>();
    if (j.contains("mover_intensity")) s.mover_intensity = j["mover_intensity"].get<int>();
    if (j.contains("mover_start_x_fraction"))
        s.mover_start_x_fraction = j["mover_start_x_fraction"].get<double>();
    if (j.contains("mover_start_y_fraction"))
        s.mover_start_y_fraction = j["mover_start_y_fraction"].get<double>();
    if (j.contains("mover_velocity_x"))
        s.mover_velocity_x = j["mover_velocity_x"].get<double>();
    if (j.contains("mover_velocity_y"))
        s.mover_velocity_y = j["mover_velocity_y"].get<double>();
    if (j.contains("reflector_count")) s.reflector_count = j["reflector_count"].get<int>();
    if (j.contains("reflector_size")) s.reflector_size = j["reflector_size"].get<int>();
    if (j.contains("reflector_spacing"))
        s.reflector_spacing = j["reflector_spacing"].get<int>();
    if (j.contains("reflector_intensity"))
        s.reflector_intensity = j["reflector_intensity"].get<int>();
    if (j.contains("noise_sigma")) s.noise_sigma = j["noise_sigma"].get<double>();
    if (j.contains("rain_density")) s.rain_density = j["rain_density"].get<double>();
    if (j.contains("rain_length")) s.rain_length = j["rain_length"].get<double>();
    if (j.contains("seed")) s.seed = j["seed"].get<uint64_t>();
    s.validate();
    return s;
}

synth::SceneSpec load_scene_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scene spec: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return scene_from_json_text(ss.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

} // namespace lanepre::config
