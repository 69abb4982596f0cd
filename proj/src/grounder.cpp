// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include "kgforge/grounder.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "kgforge/text.hpp"

namespace kgforge::grounder {

namespace {

constexpr std::string_view kSameAs = "mw:SameAs";

std::string join_range(const std::vector<std::string>& tokens, std::size_t from, std::size_t len) {
  std::string out;
  for (std::size_t i = from; i < from + len; ++i) {
    if (i > from) out.push_back(' ');
    out.append(tokens[i]);
  }
  return out;
}

}  // namespace

void LabelIndex::add(std::string_view label, const std::string& id) {
  auto key = index_key(label);
  if (key.empty()) return;
  entries_[std::move(key)].insert(id);
}

const std::set<std::string>* LabelIndex::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string index_key(std::string_view label) {
  const auto tokens = text::tokenize(label);
  return join_range(tokens, 0, tokens.size());
}

LabelIndex build_label_index(const NodeTable& nodes) {
  LabelIndex index;
  for (const auto& n : nodes.rows) {
    index.add(n.label, n.id);
    for (const auto& alias : n.aliases) index.add(alias, n.id);
  }
  return index;
}

LemmaDictionary load_lemmas(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  LemmaDictionary out;
  std::string line;
  while (std::getline(in, line)) {
    auto f = text::split(line, '\t');
    if (f.size() < 2) continue;
    auto surface = text::to_lower(text::trim(f[0]));
    auto lemma = text::to_lower(text::trim(f[1]));
    if (!surface.empty() && !lemma.empty()) out.emplace(std::move(surface), std::move(lemma));
  }
  return out;
}

std::set<std::string> ground_text(std::string_view input, const LabelIndex& index,
                                  const LemmaDictionary& lemmas) {
  const auto& stop = stopwords();
  std::vector<std::string> tokens;
  for (auto& token : text::tokenize(input)) {
    if (stop.count(token)) continue;
    if (auto it = lemmas.find(token); it != lemmas.end()) {
      tokens.push_back(it->second);
    } else {
      tokens.push_back(std::move(token));
    }
  }

  std::set<std::string> matched;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t consumed = 1;
    for (std::size_t len = std::min(kMaxNgram, tokens.size() - i); len >= 1; --len) {
      if (const auto* ids = index.find(join_range(tokens, i, len))) {
        matched.insert(ids->begin(), ids->end());
        consumed = len;
        break;
      }
    }
    i += consumed;
  }
  return matched;
}

std::vector<EdgeRecord> retrieve_connecting_triples(const std::set<std::string>& question,
                                                    const std::set<std::string>& answer,
                                                    const EdgeTable& edges) {
  std::vector<EdgeRecord> out;
  std::unordered_set<std::string> seen;
  for (const auto& e : edges.rows) {
    if (e.predicate == kSameAs) continue;
    const bool forward = question.count(e.subject) && answer.count(e.object);
    const bool backward = answer.count(e.subject) && question.count(e.object);
    if (!forward && !backward) continue;
    if (!seen.insert(e.subject + '\t' + e.predicate + '\t' + e.object).second) continue;
    out.push_back(e);
  }
  return out;
}

EdgeTable project_to_datasource(const EdgeTable& edges, Datasource code) {
  EdgeTable out{edges.source + "-" + std::string(to_string(code)), {}};
  for (const auto& e : edges.rows) {
    if (e.datasource.contains(code)) out.rows.push_back(e);
  }
  return out;
}

std::vector<QaItem> parse_qa_jsonl(std::istream& in, Diagnostics& diagnostics) {
  std::vector<QaItem> items;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      diagnostics.skip(where + "not valid JSON");
      continue;
    }
    if (!j.is_object() || !j.contains("question") || !j["question"].is_string() ||
        !j.contains("choices") || !j["choices"].is_array()) {
      diagnostics.skip(where + "expected {id, question, choices}");
      continue;
    }
    QaItem item;
    if (auto id = j.find("id"); id != j.end()) {
      item.id = id->is_string() ? id->get<std::string>() : id->dump();
    } else {
      item.id = std::to_string(line_no);
    }
    item.question = j["question"].get<std::string>();
    for (const auto& c : j["choices"]) {
      if (c.is_string()) {
        item.choices.push_back(c.get<std::string>());
      } else if (c.is_object() && c.contains("text") && c["text"].is_string()) {
        item.choices.push_back(c["text"].get<std::string>());
      }
    }
    if (item.choices.size() < 2) {
      diagnostics.skip(where + "fewer than two choices");
      continue;
    }
    items.push_back(std::move(item));
  }
  return items;
}

nlohmann::json GroundingReport::to_json() const {
  nlohmann::json questions_json = nlohmann::json::array();
  for (const auto& q : questions) {
    nlohmann::json choices = nlohmann::json::array();
    for (const auto& c : q.choices) {
      choices.push_back({{"text", c.text}, {"count", c.triples.size()}});
    }
    questions_json.push_back({{"id", q.id}, {"choices", std::move(choices)}});
  }
  return {{"subset", subset},
          {"stopwords", kStopwordListVersion},
          {"questions", std::move(questions_json)},
          {"question_count", questions.size()},
          {"total", total},
          {"skipped", diagnostics.skipped}};
}

GroundingReport dataset_report(const std::vector<QaItem>& items, const NodeTable& nodes,
                               const EdgeTable& edges, std::optional<Datasource> subset,
                               const LemmaDictionary& lemmas) {
  const auto index = build_label_index(nodes);
  const EdgeTable scoped = subset ? project_to_datasource(edges, *subset) : edges;

  GroundingReport report;
  report.subset = subset ? std::string(to_string(*subset)) : "full";
  for (const auto& item : items) {
    QuestionResult q{item.id, {}};
    const auto question_nodes = ground_text(item.question, index, lemmas);
    for (const auto& choice : item.choices) {
      const auto answer_nodes = ground_text(choice, index, lemmas);
      auto triples = retrieve_connecting_triples(question_nodes, answer_nodes, scoped);
      report.total += triples.size();
      q.choices.push_back({choice, std::move(triples)});
    }
    report.questions.push_back(std::move(q));
  }
  return report;
}

}  // namespace kgforge::grounder
