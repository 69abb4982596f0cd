// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgforge/tables.hpp"

namespace kgforge {

/// Row-wise concatenation in input order. No deduplication.
NodeTable concatenate(const std::vector<NodeTable>& tables);
EdgeTable concatenate(const std::vector<EdgeTable>& tables);

/// Order of datasource codes used to arrange members of a merged id.
class DatasourcePriority {
 public:
  /// vg, wn, cn, rg, at, fn, wd, mowgli.
  DatasourcePriority();
  /// Throws Error(kContract) unless `order` is a permutation of the eight codes.
  explicit DatasourcePriority(std::vector<Datasource> order);
  /// Comma-separated codes.
  static DatasourcePriority parse(std::string_view csv);

  std::size_t rank(Datasource ds) const;
  const std::vector<Datasource>& order() const { return order_; }

 private:
  std::vector<Datasource> order_;
};

/// Source of a node id, read from its namespace prefix. Ids without a known
/// prefix belong to mowgli.
Datasource datasource_of_id(std::string_view id);

struct MergePlan {
  // Multi-member components only, each sorted in merged-id order; the list is
  // sorted by merged id.
  std::vector<std::vector<std::string>> components;
  std::vector<std::string> merged_ids;
  std::unordered_map<std::string, std::string> lookup;  // member -> merged id

  /// Merged id for `id`; ids outside every component map to themselves.
  const std::string& resolve(const std::string& id) const;
};

inline constexpr std::string_view kMergedIdSeparator = "+";

/// Connected components of the mw:SameAs edges (direction ignored). Members
/// are ordered by (priority rank, id) and joined with '+'.
MergePlan build_merge_plan(const EdgeTable& edges, const DatasourcePriority& priority = {});

struct MergedGraph {
  NodeTable nodes;
  EdgeTable edges;
};

/// Contracts every component into one node. The label comes from the
/// highest-priority member; every other label becomes an alias. Edge
/// endpoints are rewritten, self-loops left by contraction (including the
/// consumed SameAs edges) are dropped, and both tables are deduplicated.
/// Nodes come out sorted by id and edges by triple, whatever the input order.
MergedGraph apply_merge(const NodeTable& nodes, const EdgeTable& edges, const MergePlan& plan);

/// Throws Error(kStructural) if the graph still holds a SameAs edge, a
/// duplicate node id or a duplicate triple.
void verify_merged(const MergedGraph& graph);

}  // namespace kgforge
