// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgforge/error.hpp"
#include "kgforge/tables.hpp"

namespace kgforge::grounder {

/// Normalized label or alias -> ids of the nodes carrying it.
class LabelIndex {
 public:
  void add(std::string_view label, const std::string& id);

  /// Ids for an already-normalized key, or nullptr.
  const std::set<std::string>* find(const std::string& key) const;

  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::set<std::string>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::set<std::string>> entries_;
};

/// Normalization shared by the index and the grounder: tokens joined by one space.
std::string index_key(std::string_view label);

/// Indexes every node's label and aliases.
LabelIndex build_label_index(const NodeTable& nodes);

/// Surface form -> lemma, loaded from a two-column TSV.
using LemmaDictionary = std::unordered_map<std::string, std::string>;
LemmaDictionary load_lemmas(const std::filesystem::path& path);

/// The shipped English stopword list.
const std::unordered_set<std::string>& stopwords();
inline constexpr std::string_view kStopwordListVersion = "kgforge-stopwords-1";

inline constexpr std::size_t kMaxNgram = 3;

/// Tokenizes, drops stopwords, lemmatizes, then matches n-grams of up to
/// three tokens longest-first without overlap. Returns the union of matched ids.
std::set<std::string> ground_text(std::string_view text, const LabelIndex& index,
                                  const LemmaDictionary& lemmas);

/// Edges linking a question node to an answer node in either direction.
/// mw:SameAs edges never count.
std::vector<EdgeRecord> retrieve_connecting_triples(const std::set<std::string>& question,
                                                    const std::set<std::string>& answer,
                                                    const EdgeTable& edges);

/// Keeps edges whose datasource set contains `code`.
EdgeTable project_to_datasource(const EdgeTable& edges, Datasource code);

struct QaItem {
  std::string id;
  std::string question;
  std::vector<std::string> choices;
};

/// JSON-lines {id, question, choices:[...]}. Choices may be strings or
/// objects carrying "text". Bad lines and items with fewer than two choices
/// are skipped and counted.
std::vector<QaItem> parse_qa_jsonl(std::istream& in, Diagnostics& diagnostics);

struct ChoiceResult {
  std::string text;
  std::vector<EdgeRecord> triples;
};

struct QuestionResult {
  std::string id;
  std::vector<ChoiceResult> choices;
};

struct GroundingReport {
  std::string subset;  // "full" or a datasource code
  std::vector<QuestionResult> questions;
  std::size_t total = 0;
  Diagnostics diagnostics;

  nlohmann::json to_json() const;
};

/// Grounds every question/choice against the full node table and counts the
/// connecting triples among the edges of `subset` (all edges when absent).
GroundingReport dataset_report(const std::vector<QaItem>& items, const NodeTable& nodes,
                               const EdgeTable& edges, std::optional<Datasource> subset,
                               const LemmaDictionary& lemmas = {});

}  // namespace kgforge::grounder
