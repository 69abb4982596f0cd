// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <filesystem>
#include <string>

#ifndef KGFORGE_FIXTURE_DIR
#error "KGFORGE_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace fixtures {

inline std::filesystem::path root() { return KGFORGE_FIXTURE_DIR; }
inline std::filesystem::path mini() { return root() / "mini"; }
inline std::filesystem::path unit() { return root() / "unit"; }
inline std::filesystem::path linker() { return root() / "linker"; }

/// Fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("kgforge_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
