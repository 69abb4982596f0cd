// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

// Seeded random tables for property-style tests.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "kgforge/tables.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::string word(Rng& rng) {
  static const char* kSyllables[] = {"ka", "lo", "mi", "ren", "ta", "vo", "ser", "pu", "ne", "dra", "ü", "é"};
  std::string w;
  const std::size_t n = uniform(rng, 1, 3);
  for (std::size_t i = 0; i < n; ++i) w += kSyllables[uniform(rng, 0, std::size(kSyllables) - 1)];
  return w;
}

inline std::string phrase(Rng& rng) {
  std::string p = word(rng);
  if (coin(rng, 0.3)) p += " " + word(rng);
  return p;
}

inline kgforge::Datasource datasource(Rng& rng) {
  return kgforge::kAllDatasources[uniform(rng, 0, std::size(kgforge::kAllDatasources) - 1)];
}

inline kgforge::Provenance other(Rng& rng) {
  kgforge::Provenance o = kgforge::Provenance::object();
  const std::size_t n = uniform(rng, 0, 3);
  static const char* kKeys[] = {"sentence", "dataset", "frame", "rank", "score", "flag"};
  for (std::size_t i = 0; i < n; ++i) {
    const std::string key = kKeys[uniform(rng, 0, std::size(kKeys) - 1)];
    switch (uniform(rng, 0, 3)) {
      case 0: o[key] = phrase(rng); break;
      case 1: o[key] = static_cast<int>(uniform(rng, 0, 1000)); break;
      case 2: o[key] = static_cast<double>(uniform(rng, 0, 1000)) / 7.0; break;
      default: o[key] = coin(rng); break;
    }
  }
  return o;
}

/// Ids drawn from a pool of `id_pool` so that duplicates occur.
inline kgforge::NodeRecord node(Rng& rng, std::size_t id_pool) {
  kgforge::NodeRecord n;
  n.id = "/c/en/n" + std::to_string(uniform(rng, 0, id_pool - 1));
  n.label = coin(rng, 0.9) ? phrase(rng) : "";
  const std::size_t aliases = uniform(rng, 0, 2);
  for (std::size_t i = 0; i < aliases; ++i) n.aliases.push_back(phrase(rng));
  if (coin(rng, 0.3)) n.pos = std::string(1, "nvars"[uniform(rng, 0, 4)]);
  n.datasource = datasource(rng);
  if (coin(rng, 0.1)) n.datasource.add(datasource(rng));
  n.other = other(rng);
  return n;
}

inline kgforge::EdgeRecord edge(Rng& rng, std::size_t id_pool, const std::vector<std::string>& predicates) {
  kgforge::EdgeRecord e;
  e.subject = "/c/en/n" + std::to_string(uniform(rng, 0, id_pool - 1));
  e.object = "/c/en/n" + std::to_string(uniform(rng, 0, id_pool - 1));
  e.predicate = predicates[uniform(rng, 0, predicates.size() - 1)];
  e.datasource = datasource(rng);
  if (coin(rng, 0.8)) {
    e.weight = coin(rng) ? static_cast<double>(uniform(rng, 0, 8)) / 8.0
                         : std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  }
  e.other = other(rng);
  return e;
}

inline kgforge::NodeTable node_table(Rng& rng, std::size_t rows, std::size_t id_pool) {
  kgforge::NodeTable t{"random", {}};
  for (std::size_t i = 0; i < rows; ++i) t.rows.push_back(node(rng, id_pool));
  return t;
}

inline kgforge::EdgeTable edge_table(Rng& rng, std::size_t rows, std::size_t id_pool,
                                     const std::vector<std::string>& predicates) {
  kgforge::EdgeTable t{"random", {}};
  for (std::size_t i = 0; i < rows; ++i) t.rows.push_back(edge(rng, id_pool, predicates));
  return t;
}

/// ConceptNet relations: the seven symmetric ones plus directed ones.
inline const std::vector<std::string>& conceptnet_relations() {
  static const std::vector<std::string> kRelations{
      "/r/RelatedTo", "/r/Synonym",     "/r/Antonym",  "/r/SimilarTo", "/r/DistinctFrom",
      "/r/LocatedNear", "/r/EtymologicallyRelatedTo", "/r/IsA", "/r/PartOf", "/r/UsedFor",
      "/r/AtLocation", "/r/CapableOf", "/r/HasProperty", "/r/Desires"};
  return kRelations;
}

/// Random directed graph over `n` nodes with edge probability `p`.
inline kgforge::EdgeTable digraph(Rng& rng, std::size_t n, double p) {
  kgforge::EdgeTable t{"graph", {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && coin(rng, p)) {
        kgforge::EdgeRecord e;
        e.subject = "v" + std::to_string(i);
        e.predicate = "/r/RelatedTo";
        e.object = "v" + std::to_string(j);
        e.datasource = kgforge::Datasource::kCn;
        t.rows.push_back(e);
      }
    }
  }
  return t;
}

}  // namespace gen
