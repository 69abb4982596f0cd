// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include "kgforge/consolidate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_set>

#include "kgforge/error.hpp"
#include "kgforge/text.hpp"

namespace kgforge {

namespace {

constexpr std::string_view kSameAs = "mw:SameAs";

class UnionFind {
 public:
  std::size_t add(const std::string& id) {
    auto [it, inserted] = index_.try_emplace(id, parent_.size());
    if (inserted) {
      parent_.push_back(parent_.size());
      ids_.push_back(id);
    }
    return it->second;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Roots only identify groups; output order never depends on them.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

  std::size_t size() const { return parent_.size(); }
  const std::string& id(std::size_t i) const { return ids_[i]; }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> parent_;
  std::vector<std::string> ids_;
};

template <typename Table>
Table concat_impl(const std::vector<Table>& tables) {
  Table out;
  std::size_t total = 0;
  for (const auto& t : tables) total += t.rows.size();
  out.rows.reserve(total);
  for (const auto& t : tables) {
    if (!out.source.empty() && !t.source.empty()) out.source += "+";
    out.source += t.source;
    out.rows.insert(out.rows.end(), t.rows.begin(), t.rows.end());
  }
  return out;
}

}  // namespace

NodeTable concatenate(const std::vector<NodeTable>& tables) { return concat_impl(tables); }
EdgeTable concatenate(const std::vector<EdgeTable>& tables) { return concat_impl(tables); }

DatasourcePriority::DatasourcePriority()
    : order_{Datasource::kVg, Datasource::kWn, Datasource::kCn, Datasource::kRg,
             Datasource::kAt, Datasource::kFn, Datasource::kWd, Datasource::kMowgli} {}

DatasourcePriority::DatasourcePriority(std::vector<Datasource> order) : order_(std::move(order)) {
  std::set<Datasource> seen(order_.begin(), order_.end());
  if (order_.size() != std::size(kAllDatasources) || seen.size() != order_.size()) {
    throw Error(ErrorCode::kContract, "datasource priority must list each of the eight codes once");
  }
}

DatasourcePriority DatasourcePriority::parse(std::string_view csv) {
  std::vector<Datasource> order;
  for (auto part : text::split(csv, ',')) {
    part = text::trim(part);
    auto ds = parse_datasource(part);
    if (!ds) throw Error(ErrorCode::kInvalidDatasource, "unknown datasource '" + std::string(part) + "'");
    order.push_back(*ds);
  }
  return DatasourcePriority(std::move(order));
}

std::size_t DatasourcePriority::rank(Datasource ds) const {
  return static_cast<std::size_t>(std::find(order_.begin(), order_.end(), ds) - order_.begin());
}

Datasource datasource_of_id(std::string_view id) {
  static const std::pair<std::string_view, Datasource> kPrefixes[] = {
      {"/c/", Datasource::kCn}, {"vg:", Datasource::kVg}, {"wn:", Datasource::kWn},
      {"rg:", Datasource::kRg}, {"at:", Datasource::kAt}, {"fn:", Datasource::kFn},
      {"wd:", Datasource::kWd},
  };
  for (const auto& [prefix, ds] : kPrefixes) {
    if (text::starts_with(id, prefix)) return ds;
  }
  return Datasource::kMowgli;
}

const std::string& MergePlan::resolve(const std::string& id) const {
  auto it = lookup.find(id);
  return it == lookup.end() ? id : it->second;
}

MergePlan build_merge_plan(const EdgeTable& edges, const DatasourcePriority& priority) {
  UnionFind uf;
  for (const auto& e : edges.rows) {
    if (e.predicate != kSameAs) continue;
    uf.unite(uf.add(e.subject), uf.add(e.object));
  }

  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < uf.size(); ++i) groups[uf.find(i)].push_back(uf.id(i));

  auto member_less = [&](const std::string& a, const std::string& b) {
    const auto ra = priority.rank(datasource_of_id(a));
    const auto rb = priority.rank(datasource_of_id(b));
    return ra != rb ? ra < rb : a < b;
  };

  std::vector<std::pair<std::string, std::vector<std::string>>> components;
  for (auto& [root, members] : groups) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end(), member_less);
    std::string merged;
    for (const auto& m : members) {
      if (!merged.empty()) merged += kMergedIdSeparator;
      merged += m;
    }
    components.emplace_back(std::move(merged), std::move(members));
  }
  std::sort(components.begin(), components.end());

  MergePlan plan;
  for (auto& [merged, members] : components) {
    for (const auto& m : members) plan.lookup.emplace(m, merged);
    plan.merged_ids.push_back(std::move(merged));
    plan.components.push_back(std::move(members));
  }
  return plan;
}

namespace {

auto node_content(const NodeRecord& n) {
  return std::make_tuple(std::cref(n.label), std::cref(n.aliases), std::cref(n.pos), n.datasource.str(),
                         n.other.dump());
}

auto edge_content(const EdgeRecord& e) {
  return std::make_tuple(std::cref(e.subject), std::cref(e.predicate), std::cref(e.object), e.weight,
                         e.datasource.str(), e.other.dump());
}

}  // namespace

MergedGraph apply_merge(const NodeTable& nodes, const EdgeTable& edges, const MergePlan& plan) {
  // Member position inside its component decides which label wins.
  std::unordered_map<std::string, std::size_t> member_pos;
  for (const auto& members : plan.components) {
    for (std::size_t i = 0; i < members.size(); ++i) member_pos.emplace(members[i], i);
  }
  auto pos_of = [&](const std::string& id) {
    auto it = member_pos.find(id);
    return it == member_pos.end() ? std::size_t{0} : it->second;
  };

  std::map<std::string, std::vector<std::size_t>> group_rows;
  for (std::size_t i = 0; i < nodes.rows.size(); ++i) {
    group_rows[plan.resolve(nodes.rows[i].id)].push_back(i);
  }

  NodeTable staged{nodes.source, {}};
  staged.rows.reserve(nodes.rows.size());
  for (auto& [merged, rows] : group_rows) {
    // Content breaks ties so that input row order never shows in the output.
    std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
      const auto& na = nodes.rows[a];
      const auto& nb = nodes.rows[b];
      const auto ra = pos_of(na.id);
      const auto rb = pos_of(nb.id);
      if (ra != rb) return ra < rb;
      return node_content(na) < node_content(nb);
    });
    for (std::size_t i : rows) {
      NodeRecord n = nodes.rows[i];
      n.id = merged;
      staged.rows.push_back(std::move(n));
    }
  }

  EdgeTable rewritten{edges.source, {}};
  rewritten.rows.reserve(edges.rows.size());
  for (const auto& e : edges.rows) {
    const auto& s = plan.resolve(e.subject);
    const auto& o = plan.resolve(e.object);
    if (s == o && (plan.lookup.count(e.subject) || e.predicate == kSameAs)) continue;
    EdgeRecord r = e;
    r.subject = s;
    r.object = o;
    rewritten.rows.push_back(std::move(r));
  }
  std::sort(rewritten.rows.begin(), rewritten.rows.end(),
            [](const EdgeRecord& a, const EdgeRecord& b) { return edge_content(a) < edge_content(b); });

  return {dedup_nodes(staged), dedup_edges(rewritten)};
}

void verify_merged(const MergedGraph& graph) {
  std::unordered_set<std::string> ids;
  for (const auto& n : graph.nodes.rows) {
    if (!ids.insert(n.id).second) throw Error(ErrorCode::kStructural, "duplicate node id " + n.id);
  }
  std::unordered_set<std::string> triples;
  for (const auto& e : graph.edges.rows) {
    if (e.predicate == kSameAs) {
      throw Error(ErrorCode::kStructural, "SameAs edge survived merging: " + e.subject + " -> " + e.object);
    }
    if (!triples.insert(e.subject + '\t' + e.predicate + '\t' + e.object).second) {
      throw Error(ErrorCode::kStructural, "duplicate edge " + e.subject + " " + e.predicate + " " + e.object);
    }
  }
}

}  // namespace kgforge
