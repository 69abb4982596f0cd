// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include "kgforge/decisions.hpp"

#include <fstream>
#include <set>

#include "kgforge/text.hpp"

namespace kgforge {

nlohmann::json DecisionEvent::to_json() const {
  return {{"subject", subject},
          {"object", object},
          {"decision", linker::to_string(decision)},
          {"timestamp", timestamp},
          {"annotator", annotator}};
}

Decision DecisionState::get(const CandidateKey& key) const {
  auto it = latest.find(key);
  return it == latest.end() ? Decision::kPending : it->second.decision;
}

void DecisionState::apply(DecisionEvent event) {
  CandidateKey key{event.subject, event.object};
  latest.insert_or_assign(std::move(key), std::move(event));
}

DecisionState replay_decisions(std::istream& log) {
  DecisionState state;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(log, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto where = "decision log line " + std::to_string(line_no) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      // A torn final write after a crash lands here.
      state.diagnostics.skip(where + "not valid JSON");
      continue;
    }
    auto str = [&](const char* k) -> std::optional<std::string> {
      auto it = j.find(k);
      if (it == j.end() || !it->is_string()) return std::nullopt;
      return it->get<std::string>();
    };
    const auto subject = str("subject");
    const auto object = str("object");
    const auto decision = str("decision");
    if (!j.is_object() || !subject || !object || !decision) {
      state.diagnostics.skip(where + "expected {subject, object, decision}");
      continue;
    }
    const auto d = linker::parse_decision(*decision);
    if (!d) {
      state.diagnostics.skip(where + "unknown decision '" + *decision + "'");
      continue;
    }
    state.apply({*subject, *object, *d, str("timestamp").value_or(""),
                 str("annotator").value_or("")});
  }
  return state;
}

DecisionState load_decisions(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return replay_decisions(in);
}

bool is_probabilistic(const EdgeRecord& edge) {
  return edge.other.is_object() && edge.other.contains("similarity");
}

GateResult filter_by_decisions(const EdgeTable& mappings, const DecisionState& decisions,
                               GateMode mode) {
  GateResult result;
  result.edges.source = mappings.source;
  std::set<CandidateKey> known;
  for (const auto& e : mappings.rows) {
    CandidateKey key{e.subject, e.object};
    known.insert(key);
    switch (decisions.get(key)) {
      case Decision::kAccepted:
        ++result.accepted;
        result.edges.rows.push_back(e);
        break;
      case Decision::kRejected:
        ++result.rejected;
        break;
      case Decision::kPending:
        ++result.undecided;
        if (mode == GateMode::kPermissive) result.edges.rows.push_back(e);
        break;
    }
  }
  for (const auto& [key, event] : decisions.latest) {
    if (!known.count(key)) {
      result.diagnostics.skip("decision for unknown mapping " + key.first + " -> " + key.second);
    }
  }
  return result;
}

}  // namespace kgforge
