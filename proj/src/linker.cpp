// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include "kgforge/linker.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

#include "kgforge/text.hpp"

namespace kgforge::linker {

namespace {

constexpr double kTieEpsilon = 1e-12;

std::vector<std::string> doc_tokens(const WikidataDoc& d) {
  auto out = text::tokenize(d.label);
  for (const auto& a : d.aliases) {
    auto t = text::tokenize(a);
    out.insert(out.end(), t.begin(), t.end());
  }
  auto t = text::tokenize(d.description);
  out.insert(out.end(), t.begin(), t.end());
  return out;
}

std::vector<std::string> split_list(std::string_view field) {
  std::vector<std::string> out;
  for (auto part : text::split(field, '|')) {
    part = text::trim(part);
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

template <typename Fn>
void for_each_row(std::istream& in, Fn&& fn) {
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

}  // namespace

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::kPending: return "pending";
    case Decision::kAccepted: return "accepted";
    case Decision::kRejected: return "rejected";
  }
  return "pending";
}

std::optional<Decision> parse_decision(std::string_view s) {
  if (s == "pending") return Decision::kPending;
  if (s == "accepted") return Decision::kAccepted;
  if (s == "rejected") return Decision::kRejected;
  return std::nullopt;
}

const std::vector<InvertedIndex::Posting>* InvertedIndex::postings(const std::string& token) const {
  auto it = postings_.find(token);
  return it == postings_.end() ? nullptr : &it->second;
}

std::size_t InvertedIndex::df(const std::string& token) const {
  const auto* p = postings(token);
  return p ? p->size() : 0;
}

InvertedIndex build_index(std::vector<WikidataDoc> docs) {
  InvertedIndex index;
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& d = docs[i];
    if (!ids.insert(d.id).second) throw Error(ErrorCode::kIndexing, "duplicate document id " + d.id);
    if (d.inlinks < 0) throw Error(ErrorCode::kIndexing, "negative inlink count for " + d.id);
    std::map<std::string, std::size_t> tf;
    for (auto& t : doc_tokens(d)) ++tf[std::move(t)];
    for (const auto& [token, count] : tf) index.postings_[token].push_back({i, count});
  }
  index.docs_ = std::move(docs);
  return index;
}

std::vector<MappingCandidate> crm_retrieve(const InvertedIndex& index, std::string_view synset_id,
                                           std::string_view query, const LinkerConfig& cfg) {
  if (cfg.top_k == 0) throw Error(ErrorCode::kContract, "top-k must be at least 1");
  const auto tokens = text::tokenize(query);
  const std::set<std::string> distinct(tokens.begin(), tokens.end());
  const double n = static_cast<double>(index.size());

  std::map<std::size_t, double> tfidf;
  for (const auto& t : distinct) {
    const auto* postings = index.postings(t);
    if (!postings) continue;
    const double idf = std::log(1.0 + n / static_cast<double>(postings->size()));
    for (const auto& p : *postings) tfidf[p.doc] += static_cast<double>(p.tf) * idf;
  }

  std::vector<MappingCandidate> out;
  out.reserve(tfidf.size());
  for (const auto& [doc, base] : tfidf) {
    const auto& d = index.docs()[doc];
    const double boost = 1.0 + std::log(1.0 + static_cast<double>(d.inlinks));
    out.push_back({std::string(synset_id), d.id, base * boost, std::nullopt, Decision::kPending});
  }
  std::sort(out.begin(), out.end(), [](const MappingCandidate& a, const MappingCandidate& b) {
    if (a.retrieval_score != b.retrieval_score) return a.retrieval_score > b.retrieval_score;
    return a.wikidata < b.wikidata;
  });
  if (out.size() > cfg.top_k) out.resize(cfg.top_k);
  return out;
}

double scm_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kContract, "embedding sizes differ: " + std::to_string(a.size()) +
                                          " vs " + std::to_string(b.size()));
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorCode::kUndefinedSimilarity, "cosine similarity of a zero vector");
  }
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

std::string SynsetDoc::query() const {
  std::string q;
  for (const auto& w : words) {
    if (!q.empty()) q.push_back(' ');
    q.append(w);
  }
  return q;
}

std::optional<EdgeRecord> mm_map(const SynsetDoc& synset, std::vector<MappingCandidate>& candidates,
                                 const InvertedIndex& index, const EmbeddingProvider& provider) {
  if (candidates.empty()) return std::nullopt;
  std::unordered_map<std::string, const WikidataDoc*> by_id;
  for (const auto& d : index.docs()) by_id.emplace(d.id, &d);

  const Eigen::VectorXd query = provider.embed(synset.id, synset.description);
  const MappingCandidate* best = nullptr;
  for (auto& c : candidates) {
    auto it = by_id.find(c.wikidata);
    const std::string description = it == by_id.end() ? std::string() : it->second->description;
    try {
      c.similarity = scm_similarity(query, provider.embed(c.wikidata, description));
    } catch (const Error& e) {
      throw Error(e.code(), synset.id + " -> " + c.wikidata + ": " + e.what());
    }
    if (!best) {
      best = &c;
      continue;
    }
    const double diff = *c.similarity - *best->similarity;
    if (diff > kTieEpsilon || (std::abs(diff) <= kTieEpsilon && c.wikidata < best->wikidata)) {
      best = &c;
    }
  }

  EdgeRecord e;
  e.subject = synset.id;
  e.predicate = "mw:SameAs";
  e.object = best->wikidata;
  e.datasource = Datasource::kMowgli;
  e.weight = std::clamp(*best->similarity, 0.0, 1.0);
  e.other["similarity"] = *best->similarity;
  e.other["retrieval_score"] = best->retrieval_score;
  return e;
}

LinkResult link_synsets(const std::vector<SynsetDoc>& synsets, const InvertedIndex& index,
                        const EmbeddingProvider& provider, const LinkerConfig& cfg) {
  LinkResult result;
  result.edges.source = "wn-wd";
  for (const auto& s : synsets) {
    auto candidates = crm_retrieve(index, s.id, s.query(), cfg);
    if (candidates.empty()) {
      result.diagnostics.skip(s.id + ": no candidates");
      continue;
    }
    if (auto edge = mm_map(s, candidates, index, provider)) {
      result.edges.rows.push_back(std::move(*edge));
    }
    result.candidates.insert(result.candidates.end(), candidates.begin(), candidates.end());
  }
  return result;
}

std::vector<WikidataDoc> parse_docs(std::istream& in, Diagnostics& diagnostics) {
  std::vector<WikidataDoc> docs;
  for_each_row(in, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (f.size() != 5) {
      diagnostics.skip(where + "expected id, label, aliases, description, inlinks");
      return;
    }
    const auto inlinks = text::parse_int(text::trim(f[4]));
    if (!inlinks || *inlinks < 0) {
      diagnostics.skip(where + "bad inlink count");
      return;
    }
    docs.push_back({std::string(text::trim(f[0])), std::string(text::trim(f[1])), split_list(f[2]),
                    std::string(text::trim(f[3])), *inlinks});
  });
  return docs;
}

std::vector<SynsetDoc> parse_synsets(std::istream& in, Diagnostics& diagnostics) {
  std::vector<SynsetDoc> out;
  for_each_row(in, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() != 3 || text::trim(f[0]).empty()) {
      diagnostics.skip("line " + std::to_string(line_no) + ": expected id, words, description");
      return;
    }
    std::string id(text::trim(f[0]));
    if (!text::starts_with(id, "wn:")) id = "wn:" + id;
    out.push_back({std::move(id), split_list(f[1]), std::string(text::trim(f[2]))});
  });
  return out;
}

}  // namespace kgforge::linker
