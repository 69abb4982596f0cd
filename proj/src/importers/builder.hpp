// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>

#include "kgforge/importers.hpp"

namespace kgforge::importers::detail {

// Accumulates the rows of one importer run and enforces the per-source
// vocabulary and referential closure before handing out deduplicated tables.
class GraphBuilder {
 public:
  explicit GraphBuilder(Source source);

  void add_node(NodeRecord node);
  void add_node(std::string id, std::string label, std::optional<std::string> pos = std::nullopt,
                Provenance other = Provenance::object());
  void add_edge(std::string subject, std::string_view predicate, std::string object,
                std::optional<double> weight = std::nullopt,
                Provenance other = Provenance::object());
  void add_edge(EdgeRecord edge);

  Diagnostics& diagnostics() { return diagnostics_; }

  // Throws Error(kStructural) if an edge endpoint has no node row.
  ImportResult finish() &&;

 private:
  Source source_;
  NodeTable nodes_;
  EdgeTable edges_;
  std::unordered_set<std::string> node_ids_;
  Diagnostics diagnostics_;
};

struct SynsetName {
  std::string lemma;  // underscores kept
  std::string pos;    // n, v, a, s, r
};

// Parses "dog.n.01"-style names; nullopt when malformed.
std::optional<SynsetName> parse_synset_name(std::string_view name);

std::string synset_label(const SynsetName& s);

}  // namespace kgforge::importers::detail
