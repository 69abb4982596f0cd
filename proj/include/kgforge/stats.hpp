// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "kgforge/tables.hpp"

namespace kgforge::stats {

/// Exact fraction; used for the mean degree 2|E|/|N|.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

/// 2 * edges / nodes, reduced.
Rational mean_degree(std::uint64_t edges, std::uint64_t nodes);

struct HistogramBin {
  std::uint64_t low = 0;   // inclusive
  std::uint64_t high = 0;  // exclusive
  std::uint64_t count = 0;
};

/// Base-2 bins: [0,1), [1,2), [2,4), [4,8), ... Empty trailing bins are omitted.
std::vector<HistogramBin> log2_histogram(const std::vector<std::uint64_t>& values);

struct DegreeSummary {
  std::uint64_t max = 0;
  double mean = 0.0;
  double std = 0.0;     // sample standard deviation
  double stderr_ = 0.0;  // std / sqrt(n)
};

struct GraphStats {
  std::uint64_t node_count = 0;
  std::uint64_t edge_count = 0;
  std::vector<std::string> ids;  // sorted
  std::vector<std::uint64_t> in_degree, out_degree, total_degree;
  Rational mean_total_degree;
  DegreeSummary in, out, total;
  std::vector<HistogramBin> in_hist, out_hist, total_hist;

  nlohmann::json to_json() const;
};

/// Every row counts as one edge. Nodes are the ids seen as subject or object.
GraphStats degree_stats(const EdgeTable& edges);

struct PageRankOptions {
  double damping = 0.85;
  double tol = 1e-10;  // L1 change between iterations
  int max_iter = 200;
};

struct PageRankResult {
  std::vector<std::string> ids;  // sorted
  Eigen::VectorXd scores;
  int iterations = 0;
  double residual = 0.0;
};

/// Power iteration on the directed graph of distinct (subject, object) pairs,
/// unweighted, with uniform teleport and uniform redistribution of dangling
/// mass. Throws Error(kEmptyGraph) without edges.
PageRankResult pagerank(const EdgeTable& edges, const PageRankOptions& options = {});

struct HitsOptions {
  double tol = 1e-10;  // L1 change of hubs plus authorities
  int max_iter = 200;
};

struct HitsResult {
  std::vector<std::string> ids;  // sorted
  Eigen::VectorXd hubs;
  Eigen::VectorXd authorities;
  int iterations = 0;
  double residual = 0.0;
};

/// Starts from uniform hubs; each step sets a = A^T h and h = A a, each
/// L2-normalized. Same graph as pagerank().
HitsResult hits(const EdgeTable& edges, const HitsOptions& options = {});

using Ranked = std::vector<std::pair<std::string, double>>;

/// Highest scores first; ties by id.
Ranked top_k(const std::vector<std::string>& ids, const Eigen::VectorXd& scores, std::size_t k);

nlohmann::json ranked_json(const Ranked& ranked);

/// in.tsv, out.tsv and total.tsv (bucket_low, bucket_high, count) under `dir`
/// with the given file prefix.
void write_histograms(const std::filesystem::path& dir, const std::string& prefix,
                      const GraphStats& stats);

}  // namespace kgforge::stats
