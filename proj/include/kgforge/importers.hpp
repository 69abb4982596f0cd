// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "kgforge/error.hpp"
#include "kgforge/tables.hpp"

namespace kgforge::importers {

// Predicates shared across sources.
inline constexpr std::string_view kSubClassOf = "rdfs:subClassOf";
inline constexpr std::string_view kRelatedTo = "/r/RelatedTo";
inline constexpr std::string_view kSynonym = "/r/Synonym";
inline constexpr std::string_view kAntonym = "/r/Antonym";
inline constexpr std::string_view kPosForm = "mw:POSForm";
inline constexpr std::string_view kIsPosFormOf = "mw:IsPOSFormOf";
inline constexpr std::string_view kOmWordnetOffset = "mw:OMWordnetOffset";
inline constexpr std::string_view kPartOfSpeechClass = "mw:PartOfSpeech";
inline constexpr std::string_view kPWordnetSynset = "mw:PWordnetSynset";
inline constexpr std::string_view kVgSubject = "vg:Subject";
inline constexpr std::string_view kVgObject = "vg:Object";
inline constexpr std::string_view kVgInImage = "vg:InImage";

/// Provenance key carrying a ConceptNet node's WordNet 3.1 offset ("02086723-n").
inline constexpr std::string_view kWn31OffsetKey = "wn31_offset";

enum class Source { kConceptNet, kVisualGenome, kWordNet, kRoget, kAtomic, kWikidata, kFrameNet };

std::string_view to_string(Source source);
std::optional<Source> parse_source(std::string_view name);
Datasource datasource_of(Source source);

/// ConceptNet relations whose edges get reverse-closed. Defaults to the seven
/// relations ConceptNet documents as symmetric; the set is replaceable.
class SymmetricRelationSet {
 public:
  static constexpr std::size_t kSize = 7;

  SymmetricRelationSet();
  /// Throws Error(kContract) unless exactly seven distinct relations are given.
  explicit SymmetricRelationSet(std::set<std::string> relations);

  /// One relation per line; blank lines and '#' comments ignored.
  static SymmetricRelationSet load(const std::filesystem::path& path);

  bool contains(std::string_view relation) const;
  const std::set<std::string, std::less<>>& relations() const { return relations_; }

 private:
  std::set<std::string, std::less<>> relations_;
};

struct ImportResult {
  NodeTable nodes;
  EdgeTable edges;
  Diagnostics diagnostics;
};

/// For every edge whose predicate is in `relations`, adds the reversed edge
/// with the same weight, datasource and provenance; output is deduplicated.
EdgeTable symmetric_closure(const EdgeTable& edges, const SymmetricRelationSet& relations);

/// True when `predicate` belongs to the declared vocabulary of `source`.
bool in_vocabulary(Source source, std::string_view predicate);

// Adapters. Each reads the raw format documented in docs/formats.md.

/// ConceptNet 5 assertion CSV (tab-separated: assertion, relation, start, end,
/// JSON metadata). Only English nodes are kept.
ImportResult import_conceptnet(std::istream& raw,
                               const SymmetricRelationSet& symmetric = SymmetricRelationSet());
/// Visual Genome scene graphs as a JSON array of images.
ImportResult import_visual_genome(std::istream& raw);
/// WordNet 3.0 hypernymy as TSV pairs (hyponym synset, hypernym synset).
ImportResult import_wordnet(std::istream& raw);
/// Roget lists as TSV (headword, '|'-joined synonyms, '|'-joined antonyms).
ImportResult import_roget(std::istream& raw);
/// ATOMIC as TSV triples (event, relation, attribute).
ImportResult import_atomic(std::istream& raw);
/// Wikidata truthy N-Triples restricted to P279, English labels, altLabels
/// and descriptions.
ImportResult import_wikidata(std::istream& raw);
/// FrameNet ontology extract as JSON (frames with FEs and LUs, semantic types,
/// frame relations, semantic-type relations).
ImportResult import_framenet(std::istream& raw);

ImportResult import_source(Source source, const std::filesystem::path& input,
                           const SymmetricRelationSet& symmetric = SymmetricRelationSet());

/// Lowercases, removes PersonX/PersonY-style tokens (with an optional 's or ’s)
/// and collapses whitespace. Returns nullopt for results that are empty or "none".
std::optional<std::string> normalize_atomic_label(std::string_view label);

/// The nine ATOMIC relation names.
const std::set<std::string, std::less<>>& atomic_relations();

/// FrameNet relation vocabularies per edge category.
const std::set<std::string, std::less<>>& framenet_frame_relations();    // 13
const std::set<std::string, std::less<>>& framenet_semtype_relations();  // 3
inline constexpr std::string_view kFnHasFrameElement = "fn:HasFrameElement";
inline constexpr std::string_view kFnHasLexicalUnit = "fn:HasLexicalUnit";
inline constexpr std::string_view kFnHasSemType = "fn:HasSemType";

/// Label/id helpers shared with the mappers.
std::string vg_label(std::string_view raw);
std::string underscore_id(std::string_view label);

}  // namespace kgforge::importers
