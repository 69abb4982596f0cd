// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "kgforge/error.hpp"
#include "kgforge/grounder.hpp"
#include "kgforge/tables.hpp"

namespace kgforge::mappers {

inline constexpr std::string_view kSameAs = "mw:SameAs";
inline constexpr std::string_view kHasInstance = "mw:HasInstance";

/// Edge table produced by a mapper; predicates are mw:SameAs or mw:HasInstance.
struct MappingResult {
  EdgeTable edges;
  Diagnostics diagnostics;
};

struct ExactMatchOptions {
  bool include_aliases = false;
  // Ignore nodes with a pos tag (ConceptNet POS forms, synsets, offsets) so
  // that only lemma-level nodes are linked.
  bool skip_pos_tagged = false;
};

/// mw:SameAs (weight 1.0) for every left/right pair whose case-folded,
/// whitespace-collapsed labels are equal. Sorted by (subject, object).
EdgeTable exact_label_match(const NodeTable& left, const NodeTable& right,
                            const ExactMatchOptions& options = {});

struct IliRow {
  std::string ili;       // "i35545"
  std::string synset30;  // "dog.n.01"
  std::string offset31;  // "02086723-n"
};

/// TSV (ili, wordnet-3.0 synset, wordnet-3.1 offset). Rows whose offset is not
/// eight digits, a dash and a POS letter are skipped.
std::vector<IliRow> parse_ili(std::istream& in, Diagnostics& diagnostics);

/// Links wn:<synset30> nodes to the ConceptNet nodes whose provenance carries
/// the matching WordNet 3.1 offset.
MappingResult ili_align(const std::vector<IliRow>& ili, const NodeTable& cn_nodes,
                        const NodeTable& synset_nodes);

struct PredicateMatrixRow {
  std::string frame;
  std::string lexical_unit;  // "perform.v"
  std::string lemma;         // "perform"
};

/// TSV (frame, lexical unit, target lemma). Applies the cleaning pass:
/// trims, lowercases and joins inner whitespace with '_'.
std::vector<PredicateMatrixRow> parse_predicate_matrix(std::istream& in, Diagnostics& diagnostics);

/// fn:lu:<lu> mw:SameAs /c/en/<lemma>/<pos>, kept only when both nodes exist.
MappingResult ingest_predicate_matrix(const std::vector<PredicateMatrixRow>& rows,
                                      const NodeTable& fn_nodes, const NodeTable& cn_nodes);

struct FrameElementSpan {
  std::string frame;
  std::string frame_element;
  std::string span;
};

/// TSV (frame, fe, span).
std::vector<FrameElementSpan> parse_fe_corpus(std::istream& in, Diagnostics& diagnostics);

/// fn:fe:<fe> mw:HasInstance <node> for every lemma-level ConceptNet node the
/// span grounds to. Spans whose FE has no node in `fn_nodes` are skipped.
MappingResult ground_frame_elements(const std::vector<FrameElementSpan>& corpus,
                                    const NodeTable& fn_nodes, const NodeTable& cn_nodes,
                                    const grounder::LemmaDictionary& lemmas);

}  // namespace kgforge::mappers
