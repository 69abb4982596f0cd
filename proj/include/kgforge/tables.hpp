// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace kgforge {

/// Provenance code of a node or edge.
enum class Datasource { kCn, kVg, kWn, kRg, kWd, kFn, kAt, kMowgli };

inline constexpr Datasource kAllDatasources[] = {
    Datasource::kCn, Datasource::kVg, Datasource::kWn, Datasource::kRg,
    Datasource::kWd, Datasource::kFn, Datasource::kAt, Datasource::kMowgli};

std::string_view to_string(Datasource ds);
std::optional<Datasource> parse_datasource(std::string_view code);

/// Ordered, duplicate-free set of datasource codes. Freshly imported rows hold
/// exactly one code; aggregation unions them, serialized as "cn|vg".
class DatasourceSet {
 public:
  DatasourceSet() = default;
  DatasourceSet(Datasource ds) : codes_{ds} {}  // NOLINT: implicit on purpose

  /// Throws Error(kInvalidDatasource) on any unknown component.
  static DatasourceSet parse(std::string_view field);

  void add(Datasource ds);
  void add(const DatasourceSet& other);
  bool contains(Datasource ds) const;
  bool empty() const { return codes_.empty(); }
  std::span<const Datasource> codes() const { return codes_; }
  std::string str() const;

  friend bool operator==(const DatasourceSet&, const DatasourceSet&) = default;

 private:
  std::vector<Datasource> codes_;
};

/// Key/value provenance map. Always a JSON object; keys serialize sorted.
using Provenance = nlohmann::json;

struct NodeRecord {
  std::string id;
  std::string label;
  std::vector<std::string> aliases;
  std::optional<std::string> pos;
  DatasourceSet datasource;
  Provenance other = Provenance::object();

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

struct EdgeRecord {
  std::string subject;
  std::string predicate;
  std::string object;
  DatasourceSet datasource;
  std::optional<double> weight;  // absent reads as 1.0
  Provenance other = Provenance::object();

  double effective_weight() const { return weight.value_or(1.0); }

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

struct NodeTable {
  std::string source;
  std::vector<NodeRecord> rows;
};

struct EdgeTable {
  std::string source;
  std::vector<EdgeRecord> rows;
};

inline constexpr std::string_view kNodeHeader = "id\tlabel\taliases\tpos\tdatasource\tother";
inline constexpr std::string_view kEdgeHeader =
    "subject\tpredicate\tobject\tdatasource\tweight\tother";

// Row codecs. `line_no` only decorates error messages.
NodeRecord parse_node_row(std::string_view line, std::size_t line_no = 0);
std::string serialize_node_row(const NodeRecord& node);
EdgeRecord parse_edge_row(std::string_view line, std::size_t line_no = 0);
std::string serialize_edge_row(const EdgeRecord& edge);

/// One row per id, in order of first appearance. The label is the first
/// non-empty one; every other label and alias becomes an alias; pos is the
/// first present; datasources are unioned; `other` is a key-wise union where
/// the first writer wins.
NodeTable dedup_nodes(const NodeTable& table);

/// One row per (subject, predicate, object), in order of first appearance.
/// Weight is the maximum present weight; datasource and `other` combine as in
/// dedup_nodes.
EdgeTable dedup_edges(const EdgeTable& table);

// TSV files with a validated header line.
NodeTable read_node_table(const std::filesystem::path& path);
EdgeTable read_edge_table(const std::filesystem::path& path);
void write_node_table(const std::filesystem::path& path, const NodeTable& table);
void write_edge_table(const std::filesystem::path& path, const EdgeTable& table);

}  // namespace kgforge
