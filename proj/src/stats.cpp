// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include "kgforge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include <Eigen/SparseCore>

#include "kgforge/error.hpp"

namespace kgforge::stats {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct Graph {
  std::vector<std::string> ids;
  // adjacency(i, j) = 1 when i -> j
  SparseMatrix adjacency;
};

Graph simple_digraph(const EdgeTable& edges) {
  std::set<std::string> id_set;
  for (const auto& e : edges.rows) {
    id_set.insert(e.subject);
    id_set.insert(e.object);
  }
  Graph g;
  g.ids.assign(id_set.begin(), id_set.end());
  if (g.ids.empty()) throw Error(ErrorCode::kEmptyGraph, "graph has no edges");

  std::unordered_map<std::string, Eigen::Index> index;
  for (std::size_t i = 0; i < g.ids.size(); ++i) index.emplace(g.ids[i], static_cast<Eigen::Index>(i));

  std::set<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (const auto& e : edges.rows) pairs.emplace(index.at(e.subject), index.at(e.object));
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(pairs.size());
  for (const auto& [s, o] : pairs) triplets.emplace_back(s, o, 1.0);

  const auto n = static_cast<Eigen::Index>(g.ids.size());
  g.adjacency.resize(n, n);
  g.adjacency.setFromTriplets(triplets.begin(), triplets.end());
  return g;
}

DegreeSummary summarize(const std::vector<std::uint64_t>& degrees) {
  DegreeSummary s;
  if (degrees.empty()) return s;
  const double n = static_cast<double>(degrees.size());
  double sum = 0.0;
  for (auto d : degrees) {
    s.max = std::max(s.max, d);
    sum += static_cast<double>(d);
  }
  s.mean = sum / n;
  if (degrees.size() > 1) {
    double sq = 0.0;
    for (auto d : degrees) sq += (static_cast<double>(d) - s.mean) * (static_cast<double>(d) - s.mean);
    s.std = std::sqrt(sq / (n - 1.0));
    s.stderr_ = s.std / std::sqrt(n);
  }
  return s;
}

nlohmann::json summary_json(const DegreeSummary& s) {
  return {{"max", s.max}, {"mean", s.mean}, {"std", s.std}, {"stderr", s.stderr_}};
}

nlohmann::json histogram_json(const std::vector<HistogramBin>& bins) {
  auto out = nlohmann::json::array();
  for (const auto& b : bins) out.push_back({b.low, b.high, b.count});
  return out;
}

}  // namespace

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

Rational mean_degree(std::uint64_t edges, std::uint64_t nodes) {
  if (nodes == 0) return {0, 1};
  const std::uint64_t num = 2 * edges;
  const std::uint64_t g = std::gcd(num, nodes);
  return {num / g, nodes / g};
}

std::vector<HistogramBin> log2_histogram(const std::vector<std::uint64_t>& values) {
  std::map<std::uint64_t, std::uint64_t> counts;  // bin index -> count; 0 is [0,1)
  for (auto v : values) {
    std::uint64_t bin = 0;
    while (v > 0) {
      ++bin;
      v >>= 1;
    }
    ++counts[bin];
  }
  std::vector<HistogramBin> out;
  if (counts.empty()) return out;
  const auto last = counts.rbegin()->first;
  for (std::uint64_t bin = 0; bin <= last; ++bin) {
    HistogramBin b;
    b.low = bin == 0 ? 0 : (std::uint64_t{1} << (bin - 1));
    b.high = bin == 0 ? 1 : (std::uint64_t{1} << bin);
    auto it = counts.find(bin);
    b.count = it == counts.end() ? 0 : it->second;
    out.push_back(b);
  }
  return out;
}

GraphStats degree_stats(const EdgeTable& edges) {
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> deg;  // id -> (in, out)
  for (const auto& e : edges.rows) {
    ++deg[e.subject].second;
    ++deg[e.object].first;
  }
  GraphStats s;
  s.node_count = deg.size();
  s.edge_count = edges.rows.size();
  s.ids.reserve(deg.size());
  for (const auto& [id, io] : deg) {
    s.ids.push_back(id);
    s.in_degree.push_back(io.first);
    s.out_degree.push_back(io.second);
    s.total_degree.push_back(io.first + io.second);
  }
  s.mean_total_degree = mean_degree(s.edge_count, s.node_count);
  s.in = summarize(s.in_degree);
  s.out = summarize(s.out_degree);
  s.total = summarize(s.total_degree);
  s.in_hist = log2_histogram(s.in_degree);
  s.out_hist = log2_histogram(s.out_degree);
  s.total_hist = log2_histogram(s.total_degree);
  return s;
}

nlohmann::json GraphStats::to_json() const {
  return {{"node_count", node_count},
          {"edge_count", edge_count},
          {"mean_degree", mean_total_degree.value()},
          {"mean_degree_exact", mean_total_degree.str()},
          {"degree", {{"total", summary_json(total)}, {"in", summary_json(in)}, {"out", summary_json(out)}}},
          {"histograms",
           {{"total", histogram_json(total_hist)},
            {"in", histogram_json(in_hist)},
            {"out", histogram_json(out_hist)}}}};
}

PageRankResult pagerank(const EdgeTable& edges, const PageRankOptions& options) {
  if (!(options.damping > 0.0 && options.damping < 1.0)) {
    throw Error(ErrorCode::kContract, "damping must lie strictly between 0 and 1");
  }
  Graph g = simple_digraph(edges);
  const auto n = static_cast<Eigen::Index>(g.ids.size());
  const double nd = static_cast<double>(n);

  Eigen::VectorXd out_deg = g.adjacency * Eigen::VectorXd::Ones(n);
  Eigen::VectorXd inv_out = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (out_deg[i] > 0) inv_out[i] = 1.0 / out_deg[i];
  }
  // transition(j, i) = 1/out(i) for i -> j
  const SparseMatrix transition = SparseMatrix(g.adjacency.transpose()) * inv_out.asDiagonal();

  PageRankResult r;
  r.ids = std::move(g.ids);
  r.scores = Eigen::VectorXd::Constant(n, 1.0 / nd);
  for (r.iterations = 0; r.iterations < options.max_iter;) {
    double dangling = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (out_deg[i] == 0) dangling += r.scores[i];
    }
    Eigen::VectorXd next = options.damping * (transition * r.scores);
    next.array() += options.damping * dangling / nd + (1.0 - options.damping) / nd;
    next /= next.sum();
    r.residual = (next - r.scores).lpNorm<1>();
    r.scores = std::move(next);
    ++r.iterations;
    if (r.residual < options.tol) break;
  }
  return r;
}

HitsResult hits(const EdgeTable& edges, const HitsOptions& options) {
  Graph g = simple_digraph(edges);
  const auto n = static_cast<Eigen::Index>(g.ids.size());
  const SparseMatrix at = g.adjacency.transpose();

  HitsResult r;
  r.ids = std::move(g.ids);
  r.hubs = Eigen::VectorXd::Ones(n).normalized();
  r.authorities = Eigen::VectorXd::Zero(n);
  for (r.iterations = 0; r.iterations < options.max_iter;) {
    Eigen::VectorXd auth = at * r.hubs;
    auth.normalize();
    Eigen::VectorXd hub = g.adjacency * auth;
    hub.normalize();
    r.residual = (auth - r.authorities).lpNorm<1>() + (hub - r.hubs).lpNorm<1>();
    r.authorities = std::move(auth);
    r.hubs = std::move(hub);
    ++r.iterations;
    if (r.residual < options.tol) break;
  }
  return r;
}

Ranked top_k(const std::vector<std::string>& ids, const Eigen::VectorXd& scores, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kContract, "k must be at least 1");
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double sa = scores[static_cast<Eigen::Index>(a)];
                      const double sb = scores[static_cast<Eigen::Index>(b)];
                      return sa != sb ? sa > sb : ids[a] < ids[b];
                    });
  Ranked out;
  for (std::size_t i = 0; i < keep; ++i) {
    out.emplace_back(ids[order[i]], scores[static_cast<Eigen::Index>(order[i])]);
  }
  return out;
}

nlohmann::json ranked_json(const Ranked& ranked) {
  auto out = nlohmann::json::array();
  for (const auto& [id, score] : ranked) out.push_back({{"id", id}, {"score", score}});
  return out;
}

void write_histograms(const std::filesystem::path& dir, const std::string& prefix,
                      const GraphStats& stats) {
  std::filesystem::create_directories(dir);
  const std::pair<const char*, const std::vector<HistogramBin>*> files[] = {
      {"in", &stats.in_hist}, {"out", &stats.out_hist}, {"total", &stats.total_hist}};
  for (const auto& [name, bins] : files) {
    const auto path = dir / (prefix + name + ".tsv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    out << "bucket_low\tbucket_high\tcount\n";
    for (const auto& b : *bins) out << b.low << '\t' << b.high << '\t' << b.count << '\n';
  }
}

}  // namespace kgforge::stats
