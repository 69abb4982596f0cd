// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

// Brute-force reference implementations used by the tests. Each one is
// written the slow, obvious way and shares no code with the library.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kgforge/linker.hpp"
#include "kgforge/tables.hpp"

namespace oracle {

using kgforge::EdgeRecord;
using kgforge::EdgeTable;
using kgforge::NodeRecord;
using kgforge::NodeTable;

// ---------------------------------------------------------------- dedup

inline NodeTable dedup_nodes(const NodeTable& in) {
  NodeTable out{in.source, {}};
  std::vector<std::string> ids;
  for (const auto& r : in.rows) {
    if (std::find(ids.begin(), ids.end(), r.id) == ids.end()) ids.push_back(r.id);
  }
  for (const auto& id : ids) {
    std::vector<const NodeRecord*> group;
    for (const auto& r : in.rows) {
      if (r.id == id) group.push_back(&r);
    }
    NodeRecord m;
    m.id = id;
    for (auto* r : group) {
      if (m.label.empty() && !r->label.empty()) m.label = r->label;
      if (!m.pos && r->pos) m.pos = r->pos;
      for (auto ds : r->datasource.codes()) m.datasource.add(ds);
      for (const auto& [k, v] : r->other.items()) {
        if (!m.other.contains(k)) m.other[k] = v;
      }
    }
    std::vector<std::string> pool;
    for (auto* r : group) {
      std::vector<std::string> strings{r->label};
      strings.insert(strings.end(), r->aliases.begin(), r->aliases.end());
      for (const auto& s : strings) {
        if (s.empty() || s == m.label) continue;
        if (std::find(pool.begin(), pool.end(), s) == pool.end()) pool.push_back(s);
      }
    }
    m.aliases = pool;
    out.rows.push_back(m);
  }
  return out;
}

inline EdgeTable dedup_edges(const EdgeTable& in) {
  EdgeTable out{in.source, {}};
  using Key = std::tuple<std::string, std::string, std::string>;
  std::vector<Key> keys;
  for (const auto& r : in.rows) {
    Key k{r.subject, r.predicate, r.object};
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
  for (const auto& k : keys) {
    EdgeRecord m;
    bool first = true;
    for (const auto& r : in.rows) {
      if (Key{r.subject, r.predicate, r.object} != k) continue;
      if (first) {
        m = r;
        first = false;
        continue;
      }
      if (r.weight && (!m.weight || *r.weight > *m.weight)) m.weight = r.weight;
      for (auto ds : r.datasource.codes()) m.datasource.add(ds);
      for (const auto& [key, v] : r.other.items()) {
        if (!m.other.contains(key)) m.other[key] = v;
      }
    }
    out.rows.push_back(m);
  }
  return out;
}

// ------------------------------------------------------- symmetric closure

/// (s, p, o) -> weight after adding every reversed symmetric edge. Weights
/// combine as in dedup: the largest explicit weight, absent only when no copy
/// carries one.
using ClosureMap = std::map<std::tuple<std::string, std::string, std::string>, std::optional<double>>;

inline ClosureMap reversal_closure(const EdgeTable& in, const std::set<std::string>& symmetric) {
  ClosureMap out;
  auto put = [&](const std::string& s, const std::string& p, const std::string& o, std::optional<double> w) {
    auto [it, inserted] = out.emplace(std::make_tuple(s, p, o), w);
    if (!inserted && w && (!it->second || *w > *it->second)) it->second = w;
  };
  for (const auto& e : in.rows) {
    put(e.subject, e.predicate, e.object, e.weight);
    if (symmetric.count(e.predicate)) put(e.object, e.predicate, e.subject, e.weight);
  }
  return out;
}

// ------------------------------------------------------ connected components

/// Components of the undirected graph over `pairs`, as sorted member sets.
inline std::set<std::set<std::string>> bfs_components(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [a, b] : pairs) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::set<std::string> seen;
  std::set<std::set<std::string>> out;
  for (const auto& [start, _] : adj) {
    if (seen.count(start)) continue;
    std::set<std::string> comp;
    std::queue<std::string> q;
    q.push(start);
    seen.insert(start);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      comp.insert(v);
      for (const auto& w : adj[v]) {
        if (seen.insert(w).second) q.push(w);
      }
    }
    out.insert(comp);
  }
  return out;
}

// -------------------------------------------------------------- centrality

struct DenseGraph {
  std::vector<std::string> ids;
  std::vector<std::vector<int>> adj;  // adj[i][j] = 1 when i -> j
};

inline DenseGraph dense_graph(const EdgeTable& edges) {
  std::set<std::string> ids;
  for (const auto& e : edges.rows) {
    ids.insert(e.subject);
    ids.insert(e.object);
  }
  DenseGraph g;
  g.ids.assign(ids.begin(), ids.end());
  const std::size_t n = g.ids.size();
  g.adj.assign(n, std::vector<int>(n, 0));
  auto index = [&](const std::string& id) {
    return static_cast<std::size_t>(std::lower_bound(g.ids.begin(), g.ids.end(), id) - g.ids.begin());
  };
  for (const auto& e : edges.rows) g.adj[index(e.subject)][index(e.object)] = 1;
  return g;
}

/// Dense power iteration with a full transition matrix, run far past
/// convergence.
inline std::vector<double> pagerank(const DenseGraph& g, double d, int iterations = 5000) {
  const std::size_t n = g.ids.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));  // m[to][from]
  for (std::size_t i = 0; i < n; ++i) {
    int out = 0;
    for (std::size_t j = 0; j < n; ++j) out += g.adj[i][j];
    for (std::size_t j = 0; j < n; ++j) {
      m[j][i] = out == 0 ? 1.0 / static_cast<double>(n) : g.adj[i][j] / static_cast<double>(out);
    }
  }
  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> next(n, (1.0 - d) / static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) next[j] += d * m[j][i] * p[i];
    }
    p = next;
  }
  return p;
}

inline void l2_normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (s > 0.0) {
    for (double& x : v) x /= s;
  }
}

/// Authority/hub power iteration from all-ones, run far past convergence.
inline std::pair<std::vector<double>, std::vector<double>> hits(const DenseGraph& g, int iterations = 20000) {
  const std::size_t n = g.ids.size();
  std::vector<double> h(n, 1.0), a(n, 0.0);
  l2_normalize(h);
  for (int it = 0; it < iterations; ++it) {
    std::fill(a.begin(), a.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[j] += g.adj[i][j] * h[i];
    }
    l2_normalize(a);
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) next[i] += g.adj[i][j] * a[j];
    }
    l2_normalize(next);
    h = next;
  }
  return {h, a};
}

// ------------------------------------------------------------------ degrees

struct Degrees {
  std::map<std::string, std::uint64_t> in, out;
};

inline Degrees degree_counts(const EdgeTable& edges) {
  Degrees d;
  for (const auto& e : edges.rows) {
    d.out[e.subject] += 1;
    d.in[e.object] += 1;
    d.in[e.subject] += 0;
    d.out[e.object] += 0;
  }
  return d;
}

// ------------------------------------------------------------------ linker

/// Lowercased runs of ASCII letters and digits; bytes >= 0x80 count as letters.
inline std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c >= 0x80) {
      cur.push_back(static_cast<char>(c >= 0x80 ? c : std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

/// Scores every document by a full scan: for each distinct query word w,
/// tf(w, d) * ln(1 + N / df(w)), summed, times 1 + ln(1 + inlinks). Documents
/// sharing no word are absent. Sorted by score descending then id.
inline std::vector<std::pair<std::string, double>> crm_scores(const std::vector<kgforge::linker::WikidataDoc>& docs,
                                                              const std::string& query) {
  auto doc_words = [](const kgforge::linker::WikidataDoc& d) {
    std::string all = d.label + " " + d.description;
    for (const auto& a : d.aliases) all += " " + a;
    return words(all);
  };
  std::vector<std::vector<std::string>> dw;
  for (const auto& d : docs) dw.push_back(doc_words(d));
  const auto q = words(query);
  const std::set<std::string> distinct(q.begin(), q.end());
  const double n = static_cast<double>(docs.size());

  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    double base = 0.0;
    bool hit = false;
    for (const auto& w : distinct) {
      const auto tf = std::count(dw[i].begin(), dw[i].end(), w);
      if (tf == 0) continue;
      std::size_t df = 0;
      for (const auto& other : dw) df += std::count(other.begin(), other.end(), w) > 0 ? 1 : 0;
      base += static_cast<double>(tf) * std::log(1.0 + n / static_cast<double>(df));
      hit = true;
    }
    if (!hit) continue;
    out.emplace_back(docs[i].id, base * (1.0 + std::log(1.0 + static_cast<double>(docs[i].inlinks))));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

/// Highest similarity; candidates within `eps` of the maximum tie and the
/// smallest id among them wins.
inline std::string argmax(const std::vector<std::pair<std::string, double>>& sims, double eps = 1e-12) {
  double best = -2.0;
  for (const auto& [_, s] : sims) best = std::max(best, s);
  std::string winner;
  for (const auto& [id, s] : sims) {
    if (best - s <= eps && (winner.empty() || id < winner)) winner = id;
  }
  return winner;
}

// --------------------------------------------------------- label matching

inline std::string fold(const std::string& s) {
  std::string out;
  bool space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

/// Every (left id, right id) whose primary labels fold to the same string.
inline std::set<std::pair<std::string, std::string>> label_pairs(const NodeTable& left, const NodeTable& right,
                                                                 bool skip_pos) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& l : left.rows) {
    if (skip_pos && l.pos) continue;
    for (const auto& r : right.rows) {
      if (skip_pos && r.pos) continue;
      if (l.id != r.id && !fold(l.label).empty() && fold(l.label) == fold(r.label)) out.emplace(l.id, r.id);
    }
  }
  return out;
}

// ------------------------------------------------------- triple retrieval

inline std::size_t connecting_triples(const std::set<std::string>& q, const std::set<std::string>& a,
                                      const EdgeTable& edges) {
  std::set<std::tuple<std::string, std::string, std::string>> hits;
  for (const auto& e : edges.rows) {
    if (e.predicate == "mw:SameAs") continue;
    if ((q.count(e.subject) && a.count(e.object)) || (a.count(e.subject) && q.count(e.object))) {
      hits.emplace(e.subject, e.predicate, e.object);
    }
  }
  return hits.size();
}

}  // namespace oracle
