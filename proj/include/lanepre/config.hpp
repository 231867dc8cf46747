#pragma once

#include <string>

#include "lanepre/pipeline.hpp"
#include "lanepre/synth.hpp"

namespace lanepre::config {

// JSON round-trip for the pipeline configuration. Loading applies the
// file's values over the built-in defaults, so partial files work;
// unknown keys are rejected to catch typos.
pipeline::PipelineConfig pipeline_from_json_text(const std::string& text);
pipeline::PipelineConfig load_pipeline_config(const std::string& path);
std::string pipeline_to_json_text(const pipeline::PipelineConfig& config);

// Same for scene specs.
synth::SceneSpec scene_from_json_text(const std::string& text);
synth::SceneSpec load_scene_spec(const std::string& path);
std::string scene_to_json_text(const synth::SceneSpec& spec);

} // namespace lanepre::config
