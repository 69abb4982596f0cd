// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include "kgforge/mappers.hpp"

#include <map>
#include <regex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "kgforge/importers.hpp"
#include "kgforge/text.hpp"

namespace kgforge::mappers {

namespace {

EdgeRecord mapping_edge(std::string subject, std::string_view predicate, std::string object,
                        Provenance other = Provenance::object()) {
  EdgeRecord e;
  e.subject = std::move(subject);
  e.predicate = std::string(predicate);
  e.object = std::move(object);
  e.datasource = Datasource::kMowgli;
  e.weight = 1.0;
  e.other = std::move(other);
  return e;
}

std::vector<std::string> match_keys(const NodeRecord& n, bool include_aliases) {
  std::vector<std::string> keys;
  if (auto k = text::label_key(n.label); !k.empty()) keys.push_back(std::move(k));
  if (include_aliases) {
    for (const auto& a : n.aliases) {
      if (auto k = text::label_key(a); !k.empty()) keys.push_back(std::move(k));
    }
  }
  return keys;
}

template <typename Fn>
void for_each_data_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    fn(text::split(line, '\t'), line_no);
  }
}

std::string clean_token(std::string_view s) {
  return importers::underscore_id(text::label_key(s));
}

std::unordered_set<std::string> id_set(const NodeTable& nodes) {
  std::unordered_set<std::string> ids;
  ids.reserve(nodes.rows.size());
  for (const auto& n : nodes.rows) ids.insert(n.id);
  return ids;
}

std::string conceptnet_pos(std::string_view framenet_pos) {
  if (framenet_pos == "adv") return "r";
  return std::string(framenet_pos);
}

}  // namespace

EdgeTable exact_label_match(const NodeTable& left, const NodeTable& right,
                            const ExactMatchOptions& options) {
  std::unordered_map<std::string, std::set<std::string>> by_key;
  for (const auto& r : right.rows) {
    if (options.skip_pos_tagged && r.pos) continue;
    for (auto& key : match_keys(r, options.include_aliases)) by_key[key].insert(r.id);
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& l : left.rows) {
    if (options.skip_pos_tagged && l.pos) continue;
    for (const auto& key : match_keys(l, options.include_aliases)) {
      auto it = by_key.find(key);
      if (it == by_key.end()) continue;
      for (const auto& rid : it->second) {
        if (rid != l.id) pairs.emplace(l.id, rid);
      }
    }
  }
  EdgeTable out{left.source + "-" + right.source, {}};
  out.rows.reserve(pairs.size());
  for (const auto& [s, o] : pairs) out.rows.push_back(mapping_edge(s, kSameAs, o));
  return out;
}

std::vector<IliRow> parse_ili(std::istream& in, Diagnostics& diagnostics) {
  static const std::regex kOffset(R"(^\d{8}-[nvasr]$)");
  std::vector<IliRow> rows;
  for_each_data_line(in, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() != 3) {
      diagnostics.skip("line " + std::to_string(line_no) + ": expected ili<TAB>synset<TAB>offset");
      return;
    }
    IliRow row{std::string(text::trim(f[0])), std::string(text::trim(f[1])),
               std::string(text::trim(f[2]))};
    if (!std::regex_match(row.offset31, kOffset)) {
      diagnostics.skip("line " + std::to_string(line_no) + ": bad WordNet 3.1 offset '" +
                       row.offset31 + "'");
      return;
    }
    rows.push_back(std::move(row));
  });
  return rows;
}

MappingResult ili_align(const std::vector<IliRow>& ili, const NodeTable& cn_nodes,
                        const NodeTable& synset_nodes) {
  std::unordered_map<std::string, std::vector<std::string>> by_offset;
  for (const auto& n : cn_nodes.rows) {
    auto it = n.other.find(importers::kWn31OffsetKey);
    if (it != n.other.end() && it->is_string()) by_offset[it->get<std::string>()].push_back(n.id);
  }
  const auto synsets = id_set(synset_nodes);

  MappingResult result;
  result.edges.source = "ili";
  for (const auto& row : ili) {
    const std::string synset_id = "wn:" + row.synset30;
    auto hit = by_offset.find(row.offset31);
    if (!synsets.count(synset_id) || hit == by_offset.end()) {
      result.diagnostics.skip("ILI " + row.ili + ": " + row.synset30 + " / " + row.offset31 +
                              " not present on both sides");
      continue;
    }
    for (const auto& cn_id : hit->second) {
      Provenance other = Provenance::object();
      other["ili"] = row.ili;
      result.edges.rows.push_back(mapping_edge(synset_id, kSameAs, cn_id, std::move(other)));
    }
  }
  result.edges = dedup_edges(result.edges);
  return result;
}

std::vector<PredicateMatrixRow> parse_predicate_matrix(std::istream& in,
                                                       Diagnostics& diagnostics) {
  std::vector<PredicateMatrixRow> rows;
  for_each_data_line(in, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() != 3) {
      diagnostics.skip("line " + std::to_string(line_no) + ": expected frame<TAB>lu<TAB>lemma");
      return;
    }
    PredicateMatrixRow row{std::string(text::trim(f[0])), clean_token(f[1]), clean_token(f[2])};
    const auto dot = row.lexical_unit.rfind('.');
    if (row.lemma.empty() || dot == std::string::npos || dot == 0 ||
        dot + 1 == row.lexical_unit.size()) {
      diagnostics.skip("line " + std::to_string(line_no) + ": malformed lexical unit or lemma");
      return;
    }
    rows.push_back(std::move(row));
  });
  return rows;
}

MappingResult ingest_predicate_matrix(const std::vector<PredicateMatrixRow>& rows,
                                      const NodeTable& fn_nodes, const NodeTable& cn_nodes) {
  const auto fn_ids = id_set(fn_nodes);
  const auto cn_ids = id_set(cn_nodes);
  MappingResult result;
  result.edges.source = "predicate-matrix";
  for (const auto& row : rows) {
    const auto dot = row.lexical_unit.rfind('.');
    const std::string lu_id = "fn:lu:" + row.lexical_unit;
    const std::string cn_id =
        "/c/en/" + row.lemma + "/" + conceptnet_pos(row.lexical_unit.substr(dot + 1));
    if (!fn_ids.count(lu_id) || !cn_ids.count(cn_id)) {
      result.diagnostics.skip(lu_id + " -> " + cn_id + ": endpoint missing");
      continue;
    }
    Provenance other = Provenance::object();
    other["frame"] = row.frame;
    result.edges.rows.push_back(mapping_edge(lu_id, kSameAs, cn_id, std::move(other)));
  }
  result.edges = dedup_edges(result.edges);
  return result;
}

std::vector<FrameElementSpan> parse_fe_corpus(std::istream& in, Diagnostics& diagnostics) {
  std::vector<FrameElementSpan> rows;
  for_each_data_line(in, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() != 3 || text::trim(f[1]).empty()) {
      diagnostics.skip("line " + std::to_string(line_no) + ": expected frame<TAB>fe<TAB>span");
      return;
    }
    rows.push_back({std::string(text::trim(f[0])), std::string(text::trim(f[1])),
                    std::string(text::trim(f[2]))});
  });
  return rows;
}

MappingResult ground_frame_elements(const std::vector<FrameElementSpan>& corpus,
                                    const NodeTable& fn_nodes, const NodeTable& cn_nodes,
                                    const grounder::LemmaDictionary& lemmas) {
  // Lemma-level ConceptNet nodes only; POS forms and sense nodes share labels.
  grounder::LabelIndex index;
  for (const auto& n : cn_nodes.rows) {
    if (n.pos) continue;
    index.add(n.label, n.id);
    for (const auto& a : n.aliases) index.add(a, n.id);
  }

  const auto fn_ids = id_set(fn_nodes);
  MappingResult result;
  result.edges.source = "fe-grounding";
  for (const auto& rec : corpus) {
    const std::string fe_id = "fn:fe:" + clean_token(rec.frame_element);
    if (!fn_ids.count(fe_id)) {
      result.diagnostics.skip(fe_id + " is not a FrameNet node");
      continue;
    }
    const auto hits = grounder::ground_text(rec.span, index, lemmas);
    if (hits.empty()) {
      result.diagnostics.skip("no ConceptNet match for span '" + rec.span + "'");
      continue;
    }
    for (const auto& node : hits) {
      Provenance other = Provenance::object();
      other["frame"] = rec.frame;
      result.edges.rows.push_back(mapping_edge(fe_id, kHasInstance, node, std::move(other)));
    }
  }
  result.edges = dedup_edges(result.edges);
  return result;
}

}  // namespace kgforge::mappers
