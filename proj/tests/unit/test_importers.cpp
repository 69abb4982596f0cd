// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "fixtures.hpp"
#include "generators.hpp"
#include "kgforge/importers.hpp"
#include "oracles.hpp"

using namespace kgforge;
using namespace kgforge::importers;

namespace {

const NodeRecord* find_node(const NodeTable& t, const std::string& id) {
  auto it = std::find_if(t.rows.begin(), t.rows.end(), [&](const NodeRecord& n) { return n.id == id; });
  return it == t.rows.end() ? nullptr : &*it;
}

bool has_edge(const EdgeTable& t, const std::string& s, const std::string& p, const std::string& o) {
  return std::any_of(t.rows.begin(), t.rows.end(), [&](const EdgeRecord& e) {
    return e.subject == s && e.predicate == p && e.object == o;
  });
}

ImportResult run(ImportResult (*fn)(std::istream&), const std::string& raw) {
  std::istringstream in(raw);
  return fn(in);
}

}  // namespace

TEST(SymmetricRelations, DefaultsToSevenAndValidatesSize) {
  SymmetricRelationSet set;
  EXPECT_EQ(set.relations().size(), 7u);
  EXPECT_TRUE(set.contains("/r/Antonym"));
  EXPECT_FALSE(set.contains("/r/IsA"));
  EXPECT_THROW(SymmetricRelationSet({"/r/A", "/r/B"}), Error);
}

TEST(SymmetricClosure, MatchesReversalOracle) {
  gen::Rng rng(21);
  SymmetricRelationSet set;
  const std::set<std::string> symmetric(set.relations().begin(), set.relations().end());
  for (int i = 0; i < 20; ++i) {
    const auto edges = gen::edge_table(rng, 60, 15, gen::conceptnet_relations());
    const auto closed = symmetric_closure(edges, set);
    oracle::ClosureMap got;
    for (const auto& e : closed.rows) got[{e.subject, e.predicate, e.object}] = e.weight;
    EXPECT_EQ(got.size(), closed.rows.size());
    EXPECT_EQ(got, oracle::reversal_closure(edges, symmetric));
    EXPECT_EQ(symmetric_closure(closed, set).rows, closed.rows);
  }
}

TEST(ConceptNet, ImportsEnglishAssertions) {
  const auto r = run(
      [](std::istream& in) { return import_conceptnet(in); },
      "/a/1\t/r/IsA\t/c/en/dog\t/c/en/animal\t{\"weight\": 2.5, \"surfaceText\": \"[[a dog]] is [[an animal]]\"}\n"
      "/a/2\t/r/Synonym\t/c/en/happy/a\t/c/en/glad\t{\"weight\": 0.5}\n"
      "/a/3\t/r/IsA\t/c/fr/chien\t/c/fr/animal\t{}\n"
      "/a/4\t/r/IsA\t/c/en/x\t/c/en/y\tnot json\n"
      "/a/5\t/r/ExternalURL\t/c/en/dog/n/wn/animal\thttp://wordnet-rdf.princeton.edu/wn31/102086723-n\t{}\n");
  EXPECT_EQ(r.diagnostics.skipped, 1u);
  EXPECT_EQ(find_node(r.nodes, "/c/fr/chien"), nullptr);

  const auto* dog = find_node(r.nodes, "/c/en/dog");
  ASSERT_NE(dog, nullptr);
  EXPECT_EQ(dog->label, "dog");
  const auto isa = std::find_if(r.edges.rows.begin(), r.edges.rows.end(),
                                [](const EdgeRecord& e) { return e.predicate == "/r/IsA"; });
  ASSERT_NE(isa, r.edges.rows.end());
  EXPECT_EQ(isa->weight, 1.0);
  EXPECT_EQ(isa->other["raw_weight"], 2.5);

  // POS-tagged term: lemma node, POS form edges, part-of-speech class.
  const auto* happy_a = find_node(r.nodes, "/c/en/happy/a");
  ASSERT_NE(happy_a, nullptr);
  EXPECT_EQ(happy_a->pos, "a");
  EXPECT_NE(find_node(r.nodes, "/c/en/happy"), nullptr);
  EXPECT_TRUE(has_edge(r.edges, "/c/en/happy", std::string(kPosForm), "/c/en/happy/a"));
  EXPECT_TRUE(has_edge(r.edges, "/c/en/happy/a", std::string(kIsPosFormOf), "/c/en/happy"));
  EXPECT_TRUE(has_edge(r.edges, "/c/en/happy/a", std::string(kSubClassOf), std::string(kPartOfSpeechClass)));

  // Symmetric relation closed.
  EXPECT_TRUE(has_edge(r.edges, "/c/en/glad", "/r/Synonym", "/c/en/happy/a"));

  // WordNet offset from the ExternalURL row.
  const auto* sense = find_node(r.nodes, "/c/en/dog/n/wn/animal");
  ASSERT_NE(sense, nullptr);
  EXPECT_EQ(sense->other[std::string(kWn31OffsetKey)], "02086723-n");
  EXPECT_TRUE(has_edge(r.edges, "/c/en/dog/n/wn/animal", std::string(kOmWordnetOffset), "wn31:02086723-n"));
}

TEST(ConceptNet, EveryPredicateInVocabulary) {
  const auto r = import_source(Source::kConceptNet, fixtures::mini() / "conceptnet.tsv");
  for (const auto& e : r.edges.rows) EXPECT_TRUE(in_vocabulary(Source::kConceptNet, e.predicate)) << e.predicate;
}

TEST(VisualGenome, ObjectsAttributesRelationships) {
  const auto r = run(import_visual_genome, R"([{
    "image_id": 7,
    "objects": [
      {"object_id": 1, "names": ["Fire Hydrant"], "synsets": ["fire_hydrant.n.01"], "attributes": ["red"]},
      {"object_id": 2, "name": "street", "synsets": ["street.n.01"]}
    ],
    "relationships": [
      {"relationship_id": 9, "predicate": "on", "subject_id": 1, "object_id": 2},
      {"relationship_id": 10, "predicate": "near", "subject_id": 1, "object_id": 99}
    ]
  }])");
  EXPECT_EQ(r.diagnostics.skipped, 1u);
  ASSERT_NE(find_node(r.nodes, "vg:fire_hydrant"), nullptr);
  EXPECT_EQ(find_node(r.nodes, "vg:fire_hydrant")->label, "fire hydrant");
  EXPECT_NE(find_node(r.nodes, "vg:I7"), nullptr);
  const auto* synset = find_node(r.nodes, "wn:fire_hydrant.n.01");
  ASSERT_NE(synset, nullptr);
  EXPECT_EQ(synset->pos, "n");
  EXPECT_TRUE(has_edge(r.edges, "vg:fire_hydrant", "/r/RelatedTo", "vg:red"));
  EXPECT_TRUE(has_edge(r.edges, "vg:red", "/r/RelatedTo", "vg:fire_hydrant"));
  EXPECT_TRUE(has_edge(r.edges, "vg:on", std::string(kVgSubject), "vg:fire_hydrant"));
  EXPECT_TRUE(has_edge(r.edges, "vg:on", std::string(kVgObject), "vg:street"));
  EXPECT_TRUE(has_edge(r.edges, "vg:fire_hydrant", std::string(kPWordnetSynset), "wn:fire_hydrant.n.01"));
  EXPECT_TRUE(has_edge(r.edges, "vg:street", std::string(kVgInImage), "vg:I7"));
  for (const auto& e : r.edges.rows) EXPECT_TRUE(in_vocabulary(Source::kVisualGenome, e.predicate));
}

TEST(VisualGenome, RejectsNonArray) {
  EXPECT_THROW(run(import_visual_genome, "{}"), Error);
}

TEST(WordNet, TwentyPairFixture) {
  const auto r = import_source(Source::kWordNet, fixtures::unit() / "wordnet_20.tsv");
  // 20 valid pairs over 22 distinct synsets; one malformed row.
  EXPECT_EQ(r.nodes.rows.size(), 22u);
  EXPECT_EQ(r.edges.rows.size(), 20u);
  EXPECT_EQ(r.diagnostics.skipped, 1u);
  EXPECT_TRUE(has_edge(r.edges, "wn:dog.n.01", "rdfs:subClassOf", "wn:canine.n.02"));
  const auto* dog = find_node(r.nodes, "wn:dog.n.01");
  ASSERT_NE(dog, nullptr);
  EXPECT_EQ(dog->label, "dog");
  EXPECT_EQ(dog->pos, "n");
}

TEST(Roget, SynonymsAntonymsAndSelfPairs) {
  const auto r = run(import_roget, "truncate\tshorten|cut short\textend\ncut\tcut\t\n");
  EXPECT_NE(find_node(r.nodes, "rg:cut_short"), nullptr);
  EXPECT_EQ(find_node(r.nodes, "rg:cut_short")->label, "cut short");
  EXPECT_TRUE(has_edge(r.edges, "rg:truncate", "/r/Synonym", "rg:shorten"));
  EXPECT_TRUE(has_edge(r.edges, "rg:shorten", "/r/Synonym", "rg:truncate"));
  EXPECT_TRUE(has_edge(r.edges, "rg:extend", "/r/Antonym", "rg:truncate"));
  EXPECT_FALSE(has_edge(r.edges, "rg:cut", "/r/Synonym", "rg:cut"));
}

TEST(Atomic, NormalizesPersonPlaceholders) {
  EXPECT_EQ(normalize_atomic_label("PersonX walks PersonY's dog"), "walks dog");
  EXPECT_EQ(normalize_atomic_label("  PersonX   Plays  the piano "), "plays the piano");
  EXPECT_EQ(normalize_atomic_label("none"), std::nullopt);
  EXPECT_EQ(normalize_atomic_label("PersonX"), std::nullopt);
}

TEST(Atomic, ImportsNineRelations) {
  EXPECT_EQ(atomic_relations().size(), 9u);
  const auto r = run(import_atomic,
                     "PersonX bakes bread\txIntent\tto eat\n"
                     "PersonX bakes bread\txWant\tnone\n"
                     "PersonX bakes bread\txFeels\thappy\n"
                     "too\tfew\n");
  EXPECT_EQ(r.diagnostics.skipped, 3u);
  EXPECT_TRUE(has_edge(r.edges, "at:bakes_bread", "at:xIntent", "at:to_eat"));
  EXPECT_EQ(r.nodes.rows.size(), 2u);
}

TEST(Wikidata, FiftyPairFixture) {
  const auto r = import_source(Source::kWikidata, fixtures::unit() / "wikidata_50.nt");
  // Q1001..Q1050 each subclass one parent; 51 items, one garbage line.
  EXPECT_EQ(r.nodes.rows.size(), 51u);
  EXPECT_EQ(r.edges.rows.size(), 50u);
  EXPECT_EQ(r.diagnostics.skipped, 1u);
  const auto* q7 = find_node(r.nodes, "wd:Q1007");
  ASSERT_NE(q7, nullptr);
  EXPECT_EQ(q7->label, "item 7");
  EXPECT_EQ(q7->aliases.size(), 3u);
  EXPECT_EQ(q7->other["description"], "description of item 7");
  EXPECT_TRUE(has_edge(r.edges, "wd:Q1050", "rdfs:subClassOf", "wd:Q1009"));
}

TEST(FrameNet, OntologyEdges) {
  const auto r = import_source(Source::kFrameNet, fixtures::mini() / "framenet.json");
  EXPECT_EQ(framenet_frame_relations().size(), 13u);
  EXPECT_EQ(framenet_semtype_relations().size(), 3u);
  EXPECT_TRUE(has_edge(r.edges, "fn:frame:performing_arts", std::string(kFnHasLexicalUnit), "fn:lu:perform.v"));
  EXPECT_TRUE(has_edge(r.edges, "fn:frame:residence", std::string(kFnHasFrameElement), "fn:fe:place"));
  EXPECT_TRUE(has_edge(r.edges, "fn:frame:self_motion", "fn:InheritsFrom", "fn:frame:motion"));
  EXPECT_TRUE(has_edge(r.edges, "fn:fe:performer", std::string(kFnHasSemType), "fn:st:sentient"));
  const auto* lu = find_node(r.nodes, "fn:lu:perform.v");
  ASSERT_NE(lu, nullptr);
  EXPECT_EQ(lu->pos, "v");
  for (const auto& e : r.edges.rows) EXPECT_TRUE(in_vocabulary(Source::kFrameNet, e.predicate)) << e.predicate;
}

TEST(Importers, MiniSourcesHaveAboutHundredNodes) {
  for (auto [source, file] : std::vector<std::pair<Source, std::string>>{
           {Source::kConceptNet, "conceptnet.tsv"}, {Source::kVisualGenome, "visual_genome.json"},
           {Source::kWordNet, "wordnet.tsv"},       {Source::kRoget, "roget.tsv"},
           {Source::kAtomic, "atomic.tsv"},         {Source::kWikidata, "wikidata.nt"},
           {Source::kFrameNet, "framenet.json"}}) {
    const auto r = import_source(source, fixtures::mini() / file);
    EXPECT_GE(r.nodes.rows.size(), 80u) << file;
    EXPECT_LE(r.nodes.rows.size(), 130u) << file;
    for (const auto& n : r.nodes.rows) {
      // Vocabulary nodes such as mw:PartOfSpeech belong to mowgli.
      const auto expected = n.id.rfind("mw:", 0) == 0 ? Datasource::kMowgli : datasource_of(source);
      EXPECT_TRUE(n.datasource.contains(expected)) << n.id;
    }
  }
}

TEST(Importers, MissingInputIsIoError) {
  try {
    import_source(Source::kRoget, fixtures::mini() / "absent.tsv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}
