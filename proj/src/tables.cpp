// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include "kgforge/tables.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "kgforge/error.hpp"
#include "kgforge/text.hpp"

namespace kgforge {

namespace {

std::string at_line(std::size_t line_no) {
  return line_no > 0 ? " (line " + std::to_string(line_no) + ")" : std::string();
}

std::vector<std::string_view> split_fields(std::string_view line, std::size_t line_no) {
  auto fields = text::split(line, '\t');
  if (fields.size() != 6) {
    throw Error(ErrorCode::kMalformedRow, "expected 6 tab-separated fields, got " +
                                              std::to_string(fields.size()) + at_line(line_no));
  }
  return fields;
}

Provenance parse_other(std::string_view field, std::size_t line_no) {
  if (field.empty()) return Provenance::object();
  Provenance parsed;
  try {
    parsed = Provenance::parse(field);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kProvenanceParse,
                std::string("bad JSON in 'other': ") + e.what() + at_line(line_no));
  }
  if (!parsed.is_object()) {
    throw Error(ErrorCode::kProvenanceParse, "'other' must be a JSON object" + at_line(line_no));
  }
  return parsed;
}

DatasourceSet parse_datasource_field(std::string_view field, std::size_t line_no) {
  try {
    return DatasourceSet::parse(field);
  } catch (const Error& e) {
    throw Error(e.code(), e.what() + at_line(line_no));
  }
}

std::string dump_other(const Provenance& other) {
  if (other.is_null()) return "{}";
  if (!other.is_object()) throw Error(ErrorCode::kUnserializable, "'other' is not a JSON object");
  try {
    return other.dump();
  } catch (const nlohmann::json::type_error& e) {
    throw Error(ErrorCode::kUnserializable, std::string("'other' not serializable: ") + e.what());
  }
}

void require_cell(std::string_view value, std::string_view what) {
  if (text::contains_line_break_or_tab(value)) {
    throw Error(ErrorCode::kUnserializable,
                std::string(what) + " contains a tab or line break: '" + std::string(value) + "'");
  }
}

void merge_other(Provenance& into, const Provenance& from) {
  if (!from.is_object()) return;
  if (!into.is_object()) into = Provenance::object();
  for (const auto& [key, value] : from.items()) {
    if (!into.contains(key)) into[key] = value;
  }
}

// Ordered string union used for label/alias pooling.
class OrderedPool {
 public:
  void add(const std::string& s) {
    if (s.empty() || !seen_.insert(s).second) return;
    items_.push_back(s);
  }
  std::vector<std::string> without(const std::string& excluded) const {
    std::vector<std::string> out;
    out.reserve(items_.size());
    for (const auto& s : items_) {
      if (s != excluded) out.push_back(s);
    }
    return out;
  }

 private:
  std::vector<std::string> items_;
  std::unordered_set<std::string> seen_;
};

std::string edge_key(const EdgeRecord& e) {
  std::string key;
  key.reserve(e.subject.size() + e.predicate.size() + e.object.size() + 2);
  key.append(e.subject).push_back('\t');
  key.append(e.predicate).push_back('\t');
  key.append(e.object);
  return key;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

template <typename Row, typename ParseFn>
std::vector<Row> read_rows(const std::filesystem::path& path, std::string_view header,
                           ParseFn parse) {
  auto in = open_for_read(path);
  std::string line;
  std::size_t line_no = 0;
  std::vector<Row> rows;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!saw_header) {
      if (line != header) {
        throw Error(ErrorCode::kSchema, path.string() + ": unexpected header '" + line +
                                            "', expected '" + std::string(header) + "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    rows.push_back(parse(line, line_no));
  }
  if (!saw_header) throw Error(ErrorCode::kSchema, path.string() + ": missing header row");
  return rows;
}

}  // namespace

std::string_view to_string(Datasource ds) {
  switch (ds) {
    case Datasource::kCn: return "cn";
    case Datasource::kVg: return "vg";
    case Datasource::kWn: return "wn";
    case Datasource::kRg: return "rg";
    case Datasource::kWd: return "wd";
    case Datasource::kFn: return "fn";
    case Datasource::kAt: return "at";
    case Datasource::kMowgli: return "mowgli";
  }
  return "";
}

std::optional<Datasource> parse_datasource(std::string_view code) {
  for (auto ds : kAllDatasources) {
    if (to_string(ds) == code) return ds;
  }
  return std::nullopt;
}

DatasourceSet DatasourceSet::parse(std::string_view field) {
  DatasourceSet out;
  for (auto part : text::split(field, '|')) {
    auto ds = parse_datasource(part);
    if (!ds) {
      throw Error(ErrorCode::kInvalidDatasource,
                  "unknown datasource code '" + std::string(part) + "'");
    }
    out.add(*ds);
  }
  return out;
}

void DatasourceSet::add(Datasource ds) {
  if (!contains(ds)) codes_.push_back(ds);
}

void DatasourceSet::add(const DatasourceSet& other) {
  for (auto ds : other.codes_) add(ds);
}

bool DatasourceSet::contains(Datasource ds) const {
  return std::find(codes_.begin(), codes_.end(), ds) != codes_.end();
}

std::string DatasourceSet::str() const {
  std::string out;
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (i > 0) out.push_back('|');
    out.append(to_string(codes_[i]));
  }
  return out;
}

NodeRecord parse_node_row(std::string_view line, std::size_t line_no) {
  const auto f = split_fields(line, line_no);
  if (f[0].empty()) throw Error(ErrorCode::kMalformedRow, "empty node id" + at_line(line_no));
  NodeRecord node;
  node.id = std::string(f[0]);
  node.label = std::string(f[1]);
  if (!f[2].empty()) {
    for (auto alias : text::split(f[2], '|')) {
      if (!alias.empty()) node.aliases.emplace_back(alias);
    }
  }
  if (!f[3].empty()) node.pos = std::string(f[3]);
  node.datasource = parse_datasource_field(f[4], line_no);
  node.other = parse_other(f[5], line_no);
  return node;
}

std::string serialize_node_row(const NodeRecord& node) {
  if (node.id.empty()) throw Error(ErrorCode::kUnserializable, "empty node id");
  require_cell(node.id, "node id");
  require_cell(node.label, "label");
  for (const auto& alias : node.aliases) {
    require_cell(alias, "alias");
    if (alias.empty() || alias.find('|') != std::string::npos) {
      throw Error(ErrorCode::kUnserializable, "alias '" + alias + "' is empty or contains '|'");
    }
  }
  if (node.pos) require_cell(*node.pos, "pos");
  if (node.datasource.empty()) {
    throw Error(ErrorCode::kUnserializable, "node " + node.id + " has no datasource");
  }
  std::string out;
  out.append(node.id).push_back('\t');
  out.append(node.label).push_back('\t');
  out.append(text::join(node.aliases, "|")).push_back('\t');
  out.append(node.pos.value_or("")).push_back('\t');
  out.append(node.datasource.str()).push_back('\t');
  out.append(dump_other(node.other));
  return out;
}

EdgeRecord parse_edge_row(std::string_view line, std::size_t line_no) {
  const auto f = split_fields(line, line_no);
  if (f[0].empty() || f[1].empty() || f[2].empty()) {
    throw Error(ErrorCode::kMalformedRow, "empty subject/predicate/object" + at_line(line_no));
  }
  EdgeRecord edge;
  edge.subject = std::string(f[0]);
  edge.predicate = std::string(f[1]);
  edge.object = std::string(f[2]);
  edge.datasource = parse_datasource_field(f[3], line_no);
  if (!f[4].empty()) {
    auto w = text::parse_double(f[4]);
    if (!w) {
      throw Error(ErrorCode::kMalformedRow,
                  "weight '" + std::string(f[4]) + "' is not a number" + at_line(line_no));
    }
    if (!(*w >= 0.0 && *w <= 1.0)) {
      throw Error(ErrorCode::kWeightRange,
                  "weight " + std::string(f[4]) + " outside [0,1]" + at_line(line_no));
    }
    edge.weight = *w;
  }
  edge.other = parse_other(f[5], line_no);
  return edge;
}

std::string serialize_edge_row(const EdgeRecord& edge) {
  if (edge.subject.empty() || edge.predicate.empty() || edge.object.empty()) {
    throw Error(ErrorCode::kUnserializable, "edge has an empty subject, predicate or object");
  }
  require_cell(edge.subject, "subject");
  require_cell(edge.predicate, "predicate");
  require_cell(edge.object, "object");
  if (edge.datasource.empty()) {
    throw Error(ErrorCode::kUnserializable, "edge " + edge.subject + " has no datasource");
  }
  if (edge.weight && !(*edge.weight >= 0.0 && *edge.weight <= 1.0)) {
    throw Error(ErrorCode::kWeightRange, "weight outside [0,1] on edge " + edge.subject + " " +
                                             edge.predicate + " " + edge.object);
  }
  std::string out;
  out.append(edge.subject).push_back('\t');
  out.append(edge.predicate).push_back('\t');
  out.append(edge.object).push_back('\t');
  out.append(edge.datasource.str()).push_back('\t');
  if (edge.weight) out.append(text::format_weight(*edge.weight));
  out.push_back('\t');
  out.append(dump_other(edge.other));
  return out;
}

NodeTable dedup_nodes(const NodeTable& table) {
  NodeTable out{table.source, {}};
  std::unordered_map<std::string, std::size_t> slot;
  std::vector<OrderedPool> pools;
  slot.reserve(table.rows.size());

  for (const auto& row : table.rows) {
    auto [it, inserted] = slot.try_emplace(row.id, out.rows.size());
    if (inserted) {
      NodeRecord first;
      first.id = row.id;
      first.label = row.label;
      first.pos = row.pos;
      first.datasource = row.datasource;
      first.other = row.other.is_object() ? row.other : Provenance::object();
      out.rows.push_back(std::move(first));
      pools.emplace_back();
    } else {
      auto& merged = out.rows[it->second];
      if (merged.label.empty()) merged.label = row.label;
      if (!merged.pos) merged.pos = row.pos;
      merged.datasource.add(row.datasource);
      merge_other(merged.other, row.other);
    }
    auto& pool = pools[it->second];
    pool.add(row.label);
    for (const auto& alias : row.aliases) pool.add(alias);
  }
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    out.rows[i].aliases = pools[i].without(out.rows[i].label);
  }
  return out;
}

EdgeTable dedup_edges(const EdgeTable& table) {
  EdgeTable out{table.source, {}};
  std::unordered_map<std::string, std::size_t> slot;
  slot.reserve(table.rows.size());

  for (const auto& row : table.rows) {
    auto [it, inserted] = slot.try_emplace(edge_key(row), out.rows.size());
    if (inserted) {
      out.rows.push_back(row);
      if (!out.rows.back().other.is_object()) out.rows.back().other = Provenance::object();
      continue;
    }
    auto& merged = out.rows[it->second];
    if (row.weight && (!merged.weight || *row.weight > *merged.weight)) merged.weight = row.weight;
    merged.datasource.add(row.datasource);
    merge_other(merged.other, row.other);
  }
  return out;
}

NodeTable read_node_table(const std::filesystem::path& path) {
  return NodeTable{path.stem().string(),
                   read_rows<NodeRecord>(path, kNodeHeader, [](std::string_view l, std::size_t n) {
                     return parse_node_row(l, n);
                   })};
}

EdgeTable read_edge_table(const std::filesystem::path& path) {
  return EdgeTable{path.stem().string(),
                   read_rows<EdgeRecord>(path, kEdgeHeader, [](std::string_view l, std::size_t n) {
                     return parse_edge_row(l, n);
                   })};
}

void write_node_table(const std::filesystem::path& path, const NodeTable& table) {
  auto out = open_for_write(path);
  out << kNodeHeader << '\n';
  for (const auto& row : table.rows) out << serialize_node_row(row) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

void write_edge_table(const std::filesystem::path& path, const EdgeTable& table) {
  auto out = open_for_write(path);
  out << kEdgeHeader << '\n';
  for (const auto& row : table.rows) out << serialize_edge_row(row) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

}  // namespace kgforge
