// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgforge/decisions.hpp"
#include "kgforge/linker.hpp"
#include "kgforge/tables.hpp"

namespace httplib {
class Server;
}

namespace kgforge::review {

struct NodeInfo {
  std::string label;
  std::vector<std::string> aliases;
  std::string description;
};

using NodeDirectory = std::unordered_map<std::string, NodeInfo>;

/// Label, aliases and other.description of every node.
void add_nodes(NodeDirectory& dir, const NodeTable& nodes);
void add_docs(NodeDirectory& dir, const std::vector<linker::WikidataDoc>& docs);
void add_synsets(NodeDirectory& dir, const std::vector<linker::SynsetDoc>& synsets);

enum class DecideStatus { kOk, kUnknownKey, kConflict, kInvalidDecision };

struct DecideResult {
  DecideStatus status = DecideStatus::kOk;
  nlohmann::json item;
};

/// Candidate table plus the decision log behind it. Thread-safe; log appends
/// happen under one lock so lines never interleave.
class ReviewStore {
 public:
  /// Replays `log_path` (if present) and opens it for appending.
  ReviewStore(EdgeTable mappings, NodeDirectory directory, std::filesystem::path log_path);

  /// Weight-descending page; `status` filters on decision state.
  nlohmann::json list(std::optional<Decision> status, std::size_t offset, std::size_t limit) const;
  std::optional<nlohmann::json> item(const CandidateKey& key) const;
  nlohmann::json progress() const;

  /// Pending -> accepted/rejected. Repeating the current decision is a no-op;
  /// changing a decided item is a conflict.
  DecideResult decide(const CandidateKey& key, const std::string& decision,
                      const std::string& annotator);

  std::size_t size() const { return order_.size(); }

 private:
  nlohmann::json item_json(std::size_t i) const;

  EdgeTable mappings_;
  NodeDirectory directory_;
  std::filesystem::path log_path_;
  std::map<CandidateKey, std::size_t> index_;
  std::vector<std::size_t> order_;  // weight descending, then key
  std::vector<Decision> state_;
  std::vector<std::string> annotator_;
  mutable std::mutex mu_;
  std::ofstream log_;
};

/// HTTP front end: GET /api/candidates, POST /api/candidates/decision,
/// GET /api/progress, and static UI files at /.
class ReviewService {
 public:
  explicit ReviewService(ReviewStore& store, std::optional<std::filesystem::path> ui_dir = {});
  ~ReviewService();

  ReviewService(const ReviewService&) = delete;
  ReviewService& operator=(const ReviewService&) = delete;

  /// Binds and serves on a background thread. Port 0 picks a free port.
  /// Returns the bound port.
  int start(const std::string& host, int port);
  /// Blocks serving on the calling thread.
  void serve(const std::string& host, int port);
  void stop();

 private:
  void install_routes();

  ReviewStore& store_;
  std::optional<std::filesystem::path> ui_dir_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace kgforge::review
