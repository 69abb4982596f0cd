// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "kgforge/error.hpp"
#include "kgforge/linker.hpp"
#include "kgforge/tables.hpp"

namespace kgforge {

using linker::Decision;

/// (subject, object) of a mapping edge.
using CandidateKey = std::pair<std::string, std::string>;

struct DecisionEvent {
  std::string subject;
  std::string object;
  Decision decision = Decision::kPending;
  std::string timestamp;
  std::string annotator;

  nlohmann::json to_json() const;
};

/// Decision state rebuilt from a JSON-lines log. Later events win.
struct DecisionState {
  std::map<CandidateKey, DecisionEvent> latest;
  Diagnostics diagnostics;

  Decision get(const CandidateKey& key) const;
  void apply(DecisionEvent event);
};

/// Bad lines are skipped and counted.
DecisionState replay_decisions(std::istream& log);
/// A missing file is an empty log.
DecisionState load_decisions(const std::filesystem::path& path);

enum class GateMode { kStrict, kPermissive };

struct GateResult {
  EdgeTable edges;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t undecided = 0;
  Diagnostics diagnostics;  // decisions naming no mapping edge
};

/// Keeps accepted edges, drops rejected ones, and keeps undecided ones only in
/// permissive mode.
GateResult filter_by_decisions(const EdgeTable& mappings, const DecisionState& decisions,
                               GateMode mode);

/// True for linker output: mapping edges that carry a similarity score.
bool is_probabilistic(const EdgeRecord& edge);

}  // namespace kgforge
