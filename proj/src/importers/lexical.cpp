// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

// Line-oriented lexical sources: WordNet hypernymy, Roget and ATOMIC.

#include <string>

#include "builder.hpp"
#include "kgforge/text.hpp"

namespace kgforge::importers {

namespace {

template <typename Fn>
void for_each_line(std::istream& raw, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(raw, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    fn(std::string_view(line), line_no);
  }
}

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

bool is_person_token(std::string_view token) {
  if (token.size() < 7 || token.substr(0, 6) != "person") return false;
  const char c = token[6];
  if (c < 'a' || c > 'z') return false;
  const auto rest = token.substr(7);
  return rest.empty() || rest == "'s" || rest == "\xE2\x80\x99s";  // 's or ’s
}

}  // namespace

ImportResult import_wordnet(std::istream& raw) {
  detail::GraphBuilder b(Source::kWordNet);
  for_each_line(raw, [&](std::string_view line, std::size_t line_no) {
    auto f = text::split(line, '\t');
    if (f.size() != 2) {
      b.diagnostics().skip(where(line_no) + "expected hyponym<TAB>hypernym");
      return;
    }
    const auto hypo_name = text::trim(f[0]);
    const auto hyper_name = text::trim(f[1]);
    auto hypo = detail::parse_synset_name(hypo_name);
    auto hyper = detail::parse_synset_name(hyper_name);
    if (!hypo || !hyper) {
      b.diagnostics().skip(where(line_no) + "malformed synset name");
      return;
    }
    const std::string hypo_id = "wn:" + std::string(hypo_name);
    const std::string hyper_id = "wn:" + std::string(hyper_name);
    b.add_node(hypo_id, detail::synset_label(*hypo), hypo->pos);
    b.add_node(hyper_id, detail::synset_label(*hyper), hyper->pos);
    b.add_edge(hypo_id, kSubClassOf, hyper_id);
  });
  return std::move(b).finish();
}

ImportResult import_roget(std::istream& raw) {
  detail::GraphBuilder b(Source::kRoget);
  auto word_node = [&](std::string_view word) -> std::optional<std::string> {
    const auto label = text::label_key(word);
    if (label.empty()) return std::nullopt;
    std::string id = "rg:" + underscore_id(label);
    b.add_node(id, label);
    return id;
  };
  for_each_line(raw, [&](std::string_view line, std::size_t line_no) {
    auto f = text::split(line, '\t');
    if (f.size() > 3) {
      b.diagnostics().skip(where(line_no) + "expected headword<TAB>synonyms<TAB>antonyms");
      return;
    }
    const auto head = word_node(f[0]);
    if (!head) {
      b.diagnostics().skip(where(line_no) + "empty headword");
      return;
    }
    auto expand = [&](std::string_view field, std::string_view relation) {
      for (auto word : text::split(field, '|')) {
        if (text::trim(word).empty()) continue;
        const auto other = word_node(word);
        if (*other == *head) {
          b.diagnostics().skip(where(line_no) + "self pair on '" + std::string(word) + "'");
          continue;
        }
        b.add_edge(*head, relation, *other);
        b.add_edge(*other, relation, *head);
      }
    };
    if (f.size() > 1) expand(f[1], kSynonym);
    if (f.size() > 2) expand(f[2], kAntonym);
  });
  return std::move(b).finish();
}

std::optional<std::string> normalize_atomic_label(std::string_view label) {
  const std::string lowered = text::collapse_whitespace(text::to_lower(label));
  std::vector<std::string> kept;
  for (auto token : text::split(lowered, ' ')) {
    if (token.empty() || is_person_token(token)) continue;
    kept.emplace_back(token);
  }
  std::string out = text::join(kept, " ");
  if (out.empty() || out == "none") return std::nullopt;
  return out;
}

ImportResult import_atomic(std::istream& raw) {
  detail::GraphBuilder b(Source::kAtomic);
  for_each_line(raw, [&](std::string_view line, std::size_t line_no) {
    auto f = text::split(line, '\t');
    if (f.size() != 3) {
      b.diagnostics().skip(where(line_no) + "expected event<TAB>relation<TAB>attribute");
      return;
    }
    const auto relation = text::trim(f[1]);
    if (!atomic_relations().count(relation)) {
      b.diagnostics().skip(where(line_no) + "unknown relation '" + std::string(relation) + "'");
      return;
    }
    auto event = normalize_atomic_label(f[0]);
    auto attribute = normalize_atomic_label(f[2]);
    if (!event || !attribute) {
      b.diagnostics().skip(where(line_no) + "label excluded by normalization");
      return;
    }
    const std::string event_id = "at:" + underscore_id(*event);
    const std::string attr_id = "at:" + underscore_id(*attribute);
    b.add_node(event_id, *event);
    b.add_node(attr_id, *attribute);
    b.add_edge(event_id, "at:" + std::string(relation), attr_id);
  });
  return std::move(b).finish();
}

}  // namespace kgforge::importers
