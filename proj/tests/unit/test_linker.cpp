// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "kgforge/linker.hpp"
#include "oracles.hpp"

using namespace kgforge;
using namespace kgforge::linker;

namespace {

std::vector<WikidataDoc> fixture_docs() {
  std::ifstream in(fixtures::linker() / "docs.tsv");
  Diagnostics d;
  return parse_docs(in, d);
}

std::vector<SynsetDoc> fixture_synsets() {
  std::ifstream in(fixtures::linker() / "synsets.tsv");
  Diagnostics d;
  return parse_synsets(in, d);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no kgforge::Error thrown";
  return ErrorCode::kContract;
}

}  // namespace

TEST(Decisions, ParseAndPrint) {
  EXPECT_EQ(parse_decision("accepted"), Decision::kAccepted);
  EXPECT_EQ(parse_decision("rejected"), Decision::kRejected);
  EXPECT_EQ(parse_decision("maybe"), std::nullopt);
  EXPECT_EQ(to_string(Decision::kPending), "pending");
}

TEST(Index, RejectsDuplicatesAndNegativeLinks) {
  EXPECT_EQ(code_of([] { build_index({{"wd:Q1", "a", {}, "", 0}, {"wd:Q1", "b", {}, "", 0}}); }),
            ErrorCode::kIndexing);
  EXPECT_EQ(code_of([] { build_index({{"wd:Q1", "a", {}, "", -1}}); }), ErrorCode::kIndexing);
}

TEST(Index, PostingsCountTermFrequency) {
  const auto index = build_index({{"wd:Q1", "water", {"H2O"}, "water is wet", 0}, {"wd:Q2", "fire", {}, "", 0}});
  const auto* p = index.postings("water");
  ASSERT_NE(p, nullptr);
  ASSERT_EQ(p->size(), 1u);
  EXPECT_EQ((*p)[0].tf, 2u);
  EXPECT_EQ(index.df("h2o"), 1u);
  EXPECT_EQ(index.postings("ice"), nullptr);
}

TEST(Crm, MatchesScanOracleOnFixture) {
  const auto docs = fixture_docs();
  ASSERT_EQ(docs.size(), 20u);
  const auto index = build_index(docs);
  for (const auto& s : fixture_synsets()) {
    const auto got = crm_retrieve(index, s.id, s.query(), {50, 12});
    const auto want = oracle::crm_scores(docs, s.query());
    ASSERT_EQ(got.size(), want.size()) << s.id;
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].wikidata, want[i].first);
      EXPECT_NEAR(got[i].retrieval_score, want[i].second, 1e-9);
      EXPECT_EQ(got[i].synset, s.id);
    }
  }
}

TEST(Crm, TruncatesToTopK) {
  std::vector<WikidataDoc> docs;
  for (int i = 0; i < 120; ++i) {
    docs.push_back({"wd:Q" + std::to_string(i), "dog " + std::to_string(i), {}, "a dog", i});
  }
  const auto index = build_index(docs);
  const auto top = crm_retrieve(index, "wn:dog.n.01", "dog", {50, 8});
  ASSERT_EQ(top.size(), 50u);
  const auto full = oracle::crm_scores(docs, "dog");
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(top[i].wikidata, full[i].first);
  EXPECT_EQ(crm_retrieve(index, "s", "dog", {7, 8}).size(), 7u);
  EXPECT_EQ(code_of([&] { crm_retrieve(index, "s", "dog", {0, 8}); }), ErrorCode::kContract);
  EXPECT_TRUE(crm_retrieve(index, "s", "zebra", {50, 8}).empty());
}

TEST(Scm, CosineAndErrors) {
  Eigen::VectorXd a(3), b(3), z = Eigen::VectorXd::Zero(3), c(2);
  a << 1, 0, 0;
  b << 1, 1, 0;
  c << 1, 1;
  EXPECT_NEAR(scm_similarity(a, b), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(scm_similarity(a, -a), -1.0, 1e-15);
  EXPECT_EQ(code_of([&] { scm_similarity(a, c); }), ErrorCode::kContract);
  EXPECT_EQ(code_of([&] { scm_similarity(a, z); }), ErrorCode::kUndefinedSimilarity);
}

TEST(Embeddings, FileProviderLoadsAndRejectsUnknownKeys) {
  FileEmbeddingProvider provider(fixtures::linker() / "embeddings.tsv");
  EXPECT_EQ(provider.dim(), 12u);
  EXPECT_EQ(provider.embed("wn:dog.n.01", "").size(), 12);
  EXPECT_EQ(code_of([&] { provider.embed("wd:Q404", ""); }), ErrorCode::kProvider);

  const auto dir = fixtures::scratch("embeddings");
  std::ofstream(dir / "ragged.tsv") << "a\t1 2 3\nb\t1 2\n";
  EXPECT_EQ(code_of([&] { FileEmbeddingProvider p(dir / "ragged.tsv"); }), ErrorCode::kProvider);
  EXPECT_EQ(code_of([&] { FileEmbeddingProvider p(dir / "absent.tsv"); }), ErrorCode::kIo);
}

TEST(Embeddings, HashedBagOfWordsIsDeterministic) {
  HashedBagOfWordsProvider p(32);
  const auto a = p.embed("x", "a domestic dog");
  EXPECT_EQ(a.size(), 32);
  EXPECT_TRUE(a.isApprox(p.embed("y", "A domestic DOG")));
  EXPECT_GT(a.norm(), 0.0);
}

TEST(Mm, PicksArgmaxWithSmallestIdOnTies) {
  Eigen::VectorXd s(2), x(2), y(2), w(2);
  s << 1, 0;
  x << 1, 1;
  y << 2, 2;  // same direction as x
  w << 0, 1;
  FileEmbeddingProvider provider({{"wn:s", s}, {"wd:Q9", x}, {"wd:Q10", y}, {"wd:Q2", w}}, 2);
  const auto index = build_index({{"wd:Q9", "a", {}, "", 0}, {"wd:Q10", "a", {}, "", 0}, {"wd:Q2", "a", {}, "", 0}});
  std::vector<MappingCandidate> candidates{{"wn:s", "wd:Q9", 1.0, {}, Decision::kPending},
                                           {"wn:s", "wd:Q2", 3.0, {}, Decision::kPending},
                                           {"wn:s", "wd:Q10", 2.0, {}, Decision::kPending}};
  const auto edge = mm_map({"wn:s", {"s"}, ""}, candidates, index, provider);
  ASSERT_TRUE(edge);
  EXPECT_EQ(edge->object, "wd:Q10");
  EXPECT_EQ(edge->predicate, "mw:SameAs");
  EXPECT_NEAR(*edge->weight, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_EQ(edge->other["retrieval_score"], 2.0);
  for (const auto& c : candidates) EXPECT_TRUE(c.similarity);

  std::vector<MappingCandidate> none;
  EXPECT_FALSE(mm_map({"wn:s", {"s"}, ""}, none, index, provider));
}

TEST(Mm, NegativeSimilarityClampsWeight) {
  Eigen::VectorXd s(2), x(2);
  s << 1, 0;
  x << -1, 0;
  FileEmbeddingProvider provider({{"wn:s", s}, {"wd:Q1", x}}, 2);
  const auto index = build_index({{"wd:Q1", "a", {}, "", 0}});
  std::vector<MappingCandidate> c{{"wn:s", "wd:Q1", 1.0, {}, Decision::kPending}};
  const auto edge = mm_map({"wn:s", {"s"}, ""}, c, index, provider);
  EXPECT_EQ(*edge->weight, 0.0);
  EXPECT_EQ(edge->other["similarity"], -1.0);
}

TEST(Link, FixtureFindsPlantedTargets) {
  const auto index = build_index(fixture_docs());
  FileEmbeddingProvider provider(fixtures::linker() / "embeddings.tsv");
  const auto result = link_synsets(fixture_synsets(), index, provider, {50, 12});
  std::map<std::string, std::string> got;
  for (const auto& e : result.edges.rows) got[e.subject] = e.object;
  EXPECT_EQ(got["wn:dog.n.01"], "wd:Q144");
  EXPECT_EQ(got["wn:key.n.01"], "wd:Q132041");
  EXPECT_EQ(got["wn:piano.n.01"], "wd:Q5994");
  EXPECT_EQ(got["wn:water.n.01"], "wd:Q10");  // tied with wd:Q9; "wd:Q10" sorts first
}

TEST(Loaders, ParseDocsAndSynsets) {
  std::istringstream docs("wd:Q1\tdog\tpup|hound\ta dog\t12\nbad\trow\nwd:Q2\tcat\t\t\tx\n");
  Diagnostics d;
  const auto parsed = parse_docs(docs, d);
  ASSERT_EQ(parsed.size(), 1u);
  EXPECT_EQ(parsed[0].aliases.size(), 2u);
  EXPECT_EQ(parsed[0].inlinks, 12);
  EXPECT_EQ(d.skipped, 2u);

  std::istringstream syn("dog.n.01\tdog|domestic_dog\ta dog\n");
  const auto synsets = parse_synsets(syn, d);
  ASSERT_EQ(synsets.size(), 1u);
  EXPECT_EQ(synsets[0].id, "wn:dog.n.01");
  EXPECT_EQ(synsets[0].query(), "dog domestic_dog");
}
