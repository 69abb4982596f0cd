// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include <fstream>
#include <regex>

#include "builder.hpp"
#include "kgforge/text.hpp"

namespace kgforge::importers {

std::string_view to_string(Source source) {
  switch (source) {
    case Source::kConceptNet: return "conceptnet";
    case Source::kVisualGenome: return "visualgenome";
    case Source::kWordNet: return "wordnet";
    case Source::kRoget: return "roget";
    case Source::kAtomic: return "atomic";
    case Source::kWikidata: return "wikidata";
    case Source::kFrameNet: return "framenet";
  }
  return "";
}

std::optional<Source> parse_source(std::string_view name) {
  for (auto s : {Source::kConceptNet, Source::kVisualGenome, Source::kWordNet, Source::kRoget,
                 Source::kAtomic, Source::kWikidata, Source::kFrameNet}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

Datasource datasource_of(Source source) {
  switch (source) {
    case Source::kConceptNet: return Datasource::kCn;
    case Source::kVisualGenome: return Datasource::kVg;
    case Source::kWordNet: return Datasource::kWn;
    case Source::kRoget: return Datasource::kRg;
    case Source::kAtomic: return Datasource::kAt;
    case Source::kWikidata: return Datasource::kWd;
    case Source::kFrameNet: return Datasource::kFn;
  }
  return Datasource::kMowgli;
}

SymmetricRelationSet::SymmetricRelationSet()
    : relations_{"/r/RelatedTo",  "/r/Synonym",    "/r/Antonym",
                 "/r/SimilarTo",  "/r/DistinctFrom", "/r/LocatedNear",
                 "/r/EtymologicallyRelatedTo"} {}

SymmetricRelationSet::SymmetricRelationSet(std::set<std::string> relations)
    : relations_(relations.begin(), relations.end()) {
  if (relations_.size() != kSize) {
    throw Error(ErrorCode::kContract, "symmetric relation set must hold exactly 7 relations, got " +
                                          std::to_string(relations_.size()));
  }
}

SymmetricRelationSet SymmetricRelationSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::set<std::string> rels;
  std::string line;
  while (std::getline(in, line)) {
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    rels.emplace(t);
  }
  return SymmetricRelationSet(std::move(rels));
}

bool SymmetricRelationSet::contains(std::string_view relation) const {
  return relations_.find(relation) != relations_.end();
}

EdgeTable symmetric_closure(const EdgeTable& edges, const SymmetricRelationSet& relations) {
  EdgeTable out{edges.source, edges.rows};
  out.rows.reserve(edges.rows.size() * 2);
  for (const auto& e : edges.rows) {
    if (!relations.contains(e.predicate)) continue;
    EdgeRecord rev = e;
    std::swap(rev.subject, rev.object);
    out.rows.push_back(std::move(rev));
  }
  return dedup_edges(out);
}

const std::set<std::string, std::less<>>& atomic_relations() {
  static const std::set<std::string, std::less<>> kRelations{
      "oEffect", "oReact", "oWant", "xAttr", "xEffect", "xIntent", "xNeed", "xReact", "xWant"};
  return kRelations;
}

const std::set<std::string, std::less<>>& framenet_frame_relations() {
  static const std::set<std::string, std::less<>> kRelations{
      "fn:InheritsFrom", "fn:IsInheritedBy",     "fn:Uses",         "fn:IsUsedBy",
      "fn:HasSubframe",  "fn:SubframeOf",        "fn:Precedes",     "fn:IsPrecededBy",
      "fn:PerspectiveOn", "fn:IsPerspectivizedIn", "fn:SeeAlso",     "fn:IsCausativeOf",
      "fn:IsInchoativeOf"};
  return kRelations;
}

const std::set<std::string, std::less<>>& framenet_semtype_relations() {
  static const std::set<std::string, std::less<>> kRelations{"fn:IsSubtypeOf", "fn:HasSubtype",
                                                            "fn:SemTypeSeeAlso"};
  return kRelations;
}

bool in_vocabulary(Source source, std::string_view p) {
  switch (source) {
    case Source::kConceptNet:
      return text::starts_with(p, "/r/") || p == kPosForm || p == kIsPosFormOf ||
             p == kOmWordnetOffset || p == kSubClassOf;
    case Source::kVisualGenome:
      return p == kVgSubject || p == kVgObject || p == kVgInImage || p == kRelatedTo ||
             p == kPWordnetSynset;
    case Source::kWordNet:
    case Source::kWikidata:
      return p == kSubClassOf;
    case Source::kRoget:
      return p == kSynonym || p == kAntonym;
    case Source::kAtomic:
      return text::starts_with(p, "at:") && atomic_relations().count(p.substr(3)) > 0;
    case Source::kFrameNet:
      return p == kFnHasFrameElement || p == kFnHasLexicalUnit || p == kFnHasSemType ||
             framenet_frame_relations().count(p) > 0 || framenet_semtype_relations().count(p) > 0;
  }
  return false;
}

std::string vg_label(std::string_view raw) { return text::to_lower(text::collapse_whitespace(raw)); }

std::string underscore_id(std::string_view label) {
  std::string out(label);
  for (auto& c : out) {
    if (c == ' ') c = '_';
  }
  return out;
}

ImportResult import_source(Source source, const std::filesystem::path& input,
                           const SymmetricRelationSet& symmetric) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + input.string());
  switch (source) {
    case Source::kConceptNet: return import_conceptnet(in, symmetric);
    case Source::kVisualGenome: return import_visual_genome(in);
    case Source::kWordNet: return import_wordnet(in);
    case Source::kRoget: return import_roget(in);
    case Source::kAtomic: return import_atomic(in);
    case Source::kWikidata: return import_wikidata(in);
    case Source::kFrameNet: return import_framenet(in);
  }
  throw Error(ErrorCode::kContract, "unknown source");
}

namespace detail {

GraphBuilder::GraphBuilder(Source source) : source_(source) {
  nodes_.source = std::string(to_string(source));
  edges_.source = std::string(to_string(source));
}

void GraphBuilder::add_node(NodeRecord node) {
  if (node.datasource.empty()) node.datasource = datasource_of(source_);
  node_ids_.insert(node.id);
  nodes_.rows.push_back(std::move(node));
}

void GraphBuilder::add_node(std::string id, std::string label, std::optional<std::string> pos,
                            Provenance other) {
  NodeRecord n;
  n.id = std::move(id);
  n.label = std::move(label);
  n.pos = std::move(pos);
  n.other = std::move(other);
  add_node(std::move(n));
}

void GraphBuilder::add_edge(std::string subject, std::string_view predicate, std::string object,
                            std::optional<double> weight, Provenance other) {
  EdgeRecord e;
  e.subject = std::move(subject);
  e.predicate = std::string(predicate);
  e.object = std::move(object);
  e.weight = weight;
  e.other = std::move(other);
  add_edge(std::move(e));
}

void GraphBuilder::add_edge(EdgeRecord edge) {
  if (!in_vocabulary(source_, edge.predicate)) {
    throw Error(ErrorCode::kStructural, "predicate " + edge.predicate + " is outside the " +
                                            std::string(to_string(source_)) + " vocabulary");
  }
  if (edge.datasource.empty()) edge.datasource = datasource_of(source_);
  edges_.rows.push_back(std::move(edge));
}

ImportResult GraphBuilder::finish() && {
  for (const auto& e : edges_.rows) {
    if (!node_ids_.count(e.subject) || !node_ids_.count(e.object)) {
      throw Error(ErrorCode::kStructural,
                  "edge " + e.subject + " " + e.predicate + " " + e.object + " has no node row");
    }
  }
  return ImportResult{dedup_nodes(nodes_), dedup_edges(edges_), std::move(diagnostics_)};
}

std::optional<SynsetName> parse_synset_name(std::string_view name) {
  static const std::regex kPattern(R"(^([^\s.][^\s]*)\.([nvasr])\.(\d{2,})$)");
  std::cmatch m;
  if (!std::regex_match(name.begin(), name.end(), m, kPattern)) return std::nullopt;
  return SynsetName{m[1].str(), m[2].str()};
}

std::string synset_label(const SynsetName& s) {
  std::string out = s.lemma;
  for (auto& c : out) {
    if (c == '_') c = ' ';
  }
  return out;
}

}  // namespace detail
}  // namespace kgforge::importers
