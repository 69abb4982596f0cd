// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "kgforge/error.hpp"
#include "kgforge/tables.hpp"

namespace kgforge::linker {

struct WikidataDoc {
  std::string id;
  std::string label;
  std::vector<std::string> aliases;
  std::string description;
  long long inlinks = 0;
};

struct LinkerConfig {
  std::size_t top_k = 50;
  std::size_t dim = 64;
};

enum class Decision { kPending, kAccepted, kRejected };
std::string_view to_string(Decision d);
std::optional<Decision> parse_decision(std::string_view s);

struct MappingCandidate {
  std::string synset;
  std::string wikidata;
  double retrieval_score = 0.0;
  std::optional<double> similarity;
  Decision decision = Decision::kPending;
};

/// Token postings over label, aliases and description.
class InvertedIndex {
 public:
  struct Posting {
    std::size_t doc;
    std::size_t tf;
  };

  std::size_t size() const { return docs_.size(); }
  const std::vector<WikidataDoc>& docs() const { return docs_; }

  /// Postings in doc order, or nullptr when the token is unknown.
  const std::vector<Posting>* postings(const std::string& token) const;
  std::size_t df(const std::string& token) const;

 private:
  friend InvertedIndex build_index(std::vector<WikidataDoc> docs);

  std::vector<WikidataDoc> docs_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
};

/// Throws Error(kIndexing) on a duplicate id or a negative link count.
InvertedIndex build_index(std::vector<WikidataDoc> docs);

/// score(d) = sum over distinct query tokens t in d of tf(t,d) * ln(1 + N/df(t)),
/// times (1 + ln(1 + inlinks(d))). Sorted by score descending, then id.
std::vector<MappingCandidate> crm_retrieve(const InvertedIndex& index, std::string_view synset_id,
                                           std::string_view query, const LinkerConfig& cfg);

/// Cosine similarity. Throws kContract on a size mismatch and
/// kUndefinedSimilarity when either vector is all zeros.
double scm_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::size_t dim() const = 0;
  /// `key` names the thing being embedded (a node id); `text` is its description.
  virtual Eigen::VectorXd embed(const std::string& key, const std::string& text) const = 0;
};

/// Vectors read from a TSV of key<TAB>space-separated decimals. Unknown keys
/// throw Error(kProvider).
class FileEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit FileEmbeddingProvider(const std::filesystem::path& path);
  FileEmbeddingProvider(std::unordered_map<std::string, Eigen::VectorXd> vectors, std::size_t dim);

  std::size_t dim() const override { return dim_; }
  Eigen::VectorXd embed(const std::string& key, const std::string& text) const override;

 private:
  std::unordered_map<std::string, Eigen::VectorXd> vectors_;
  std::size_t dim_ = 0;
};

/// Hashed bag of words (FNV-1a into `dim` buckets). Deterministic, no model.
class HashedBagOfWordsProvider : public EmbeddingProvider {
 public:
  explicit HashedBagOfWordsProvider(std::size_t dim) : dim_(dim) {}
  std::size_t dim() const override { return dim_; }
  Eigen::VectorXd embed(const std::string& key, const std::string& text) const override;

 private:
  std::size_t dim_;
};

struct SynsetDoc {
  std::string id;  // wn:dog.n.01
  std::vector<std::string> words;
  std::string description;

  std::string query() const;
};

/// Scores every candidate and returns (synset mw:SameAs best) with weight
/// max(similarity, 0), or nullopt for no candidates. Ties within 1e-12 go to
/// the smallest id. `candidates` fills in similarity for each entry.
std::optional<EdgeRecord> mm_map(const SynsetDoc& synset, std::vector<MappingCandidate>& candidates,
                                 const InvertedIndex& index, const EmbeddingProvider& provider);

struct LinkResult {
  EdgeTable edges;
  std::vector<MappingCandidate> candidates;
  Diagnostics diagnostics;
};

/// CRM, SCM and MM over every synset.
LinkResult link_synsets(const std::vector<SynsetDoc>& synsets, const InvertedIndex& index,
                        const EmbeddingProvider& provider, const LinkerConfig& cfg);

// TSV loaders. Docs: id, label, aliases (|), description, inlinks.
// Synsets: id, words (|), description.
std::vector<WikidataDoc> parse_docs(std::istream& in, Diagnostics& diagnostics);
std::vector<SynsetDoc> parse_synsets(std::istream& in, Diagnostics& diagnostics);

}  // namespace kgforge::linker
