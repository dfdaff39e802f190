// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flatport/optimize.h"
#include "flatport/scene.h"

namespace flatport {

constexpr const char* kToolVersion = "flatport 0.1.0";

struct ViewSpec {
    Pose pose;
    std::string image_path;  // optional capture backing this view
};

/// One experiment description: camera, procedural scene, medium, views,
/// sampling, and optimizer settings. Parsing is strict: unknown keys and
/// out-of-bounds values are rejected.
struct Manifest {
    CameraModel camera;
    SceneSpec scene;
    MediumParams medium;
    std::vector<ViewSpec> views;
    SamplingConfig sampling;
    OptimConfig optimization;
};

Manifest parse_manifest(const nlohmann::json& j);
nlohmann::json serialize_manifest(const Manifest& m);

Manifest load_manifest(const std::string& path);
void save_manifest(const std::string& path, const Manifest& m);

/// Checks that every view's image file exists (cmd_estimate precondition).
void require_view_images(const Manifest& m);

/// Reproducibility record written next to command outputs.
struct RunRecord {
    std::string tool_version = kToolVersion;
    std::string command;
    nlohmann::json resolved_config;
    std::vector<std::string> outputs;
    double wall_time_s = 0.0;
};

void write_run_record(const std::string& path, const RunRecord& record);

}  // namespace flatport
