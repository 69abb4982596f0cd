// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace kgforge {

/// Manifest-driven import -> map -> (review pause) -> merge -> stats run.
/// Relative paths in the manifest resolve against `base_dir`. The manifest
/// layout is described in the README.
struct PipelineOutcome {
  int exit_code = 0;  // 0 ok or paused, 1 stage failure, 2 bad manifest or missing input
  std::string status;  // "ok", "paused", "failed", "invalid"
  std::string message;
  std::filesystem::path output_dir;
  nlohmann::json run;  // contents of run.json
};

PipelineOutcome run_pipeline(const nlohmann::json& manifest, const std::filesystem::path& base_dir);

/// Reads the manifest file and runs it relative to its own directory.
PipelineOutcome run_pipeline_file(const std::filesystem::path& manifest_path);

}  // namespace kgforge
