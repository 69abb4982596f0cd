// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include <unordered_map>
#include <unordered_set>

#include "builder.hpp"
#include "kgforge/text.hpp"

namespace kgforge::importers {

namespace {

constexpr std::string_view kEntityPrefix = "http://www.wikidata.org/entity/";
constexpr std::string_view kSubclassPredicate = "http://www.wikidata.org/prop/direct/P279";
constexpr std::string_view kLabelPredicate = "http://www.w3.org/2000/01/rdf-schema#label";
constexpr std::string_view kAltLabelPredicate = "http://www.w3.org/2004/02/skos/core#altLabel";
constexpr std::string_view kDescriptionPredicate = "http://schema.org/description";

struct Term {
  bool is_iri = false;
  std::string value;  // IRI without brackets, or unescaped literal
  std::string lang;
};

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Minimal N-Triples term scanner; advances `s` past the term.
std::optional<Term> next_term(std::string_view& s) {
  s = text::trim(s);
  if (s.empty()) return std::nullopt;
  Term t;
  if (s.front() == '<') {
    const auto close = s.find('>');
    if (close == std::string_view::npos) return std::nullopt;
    t.is_iri = true;
    t.value = std::string(s.substr(1, close - 1));
    s.remove_prefix(close + 1);
    return t;
  }
  if (s.front() != '"') return std::nullopt;
  std::size_t i = 1;
  for (; i < s.size() && s[i] != '"'; ++i) {
    if (s[i] != '\\') {
      t.value.push_back(s[i]);
      continue;
    }
    if (++i >= s.size()) return std::nullopt;
    switch (s[i]) {
      case 't': t.value.push_back(' '); break;
      case 'n':
      case 'r': t.value.push_back(' '); break;
      case '"': t.value.push_back('"'); break;
      case '\\': t.value.push_back('\\'); break;
      case 'u':
      case 'U': {
        const std::size_t len = s[i] == 'u' ? 4 : 8;
        if (i + len >= s.size()) return std::nullopt;
        unsigned long cp = 0;
        try {
          cp = std::stoul(std::string(s.substr(i + 1, len)), nullptr, 16);
        } catch (const std::exception&) {
          return std::nullopt;
        }
        append_utf8(t.value, cp);
        i += len;
        break;
      }
      default: t.value.push_back(s[i]);
    }
  }
  if (i >= s.size()) return std::nullopt;
  s.remove_prefix(i + 1);
  if (!s.empty() && s.front() == '@') {
    std::size_t end = 1;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
    t.lang = std::string(s.substr(1, end - 1));
    s.remove_prefix(end);
  } else if (text::starts_with(s, "^^<")) {
    const auto close = s.find('>');
    if (close == std::string_view::npos) return std::nullopt;
    s.remove_prefix(close + 1);
  }
  return t;
}

std::optional<std::string> entity_id(const Term& t) {
  if (!t.is_iri || !text::starts_with(t.value, kEntityPrefix)) return std::nullopt;
  auto local = std::string_view(t.value).substr(kEntityPrefix.size());
  if (local.size() < 2 || local.front() != 'Q') return std::nullopt;
  if (!text::parse_int(local.substr(1))) return std::nullopt;
  return "wd:" + std::string(local);
}

std::string clean_literal(std::string_view s) {
  std::string out = text::collapse_whitespace(s);
  for (auto& c : out) {
    if (c == '|') c = '/';
  }
  return out;
}

struct ItemText {
  std::string label;
  std::vector<std::string> aliases;
  std::string description;
};

}  // namespace

ImportResult import_wikidata(std::istream& raw) {
  detail::GraphBuilder b(Source::kWikidata);
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::string> item_order;
  std::unordered_map<std::string, ItemText> texts;
  std::unordered_set<std::string> in_taxonomy;

  auto note_item = [&](const std::string& id) {
    if (in_taxonomy.insert(id).second) item_order.push_back(id);
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(raw, line)) {
    ++line_no;
    std::string_view rest = line;
    if (text::trim(rest).empty() || text::trim(rest).front() == '#') continue;
    auto subj = next_term(rest);
    auto pred = next_term(rest);
    auto obj = next_term(rest);
    if (!subj || !pred || !obj || !pred->is_iri || text::trim(rest) != ".") {
      b.diagnostics().skip("line " + std::to_string(line_no) + ": not an N-Triples statement");
      continue;
    }
    auto subject_id = entity_id(*subj);
    if (!subject_id) continue;

    if (pred->value == kSubclassPredicate) {
      auto object_id = entity_id(*obj);
      if (!object_id) {
        b.diagnostics().skip("line " + std::to_string(line_no) + ": P279 object is not an item");
        continue;
      }
      note_item(*subject_id);
      note_item(*object_id);
      pairs.emplace_back(*subject_id, *object_id);
      continue;
    }
    if (obj->is_iri || obj->lang != "en") continue;
    auto& item = texts[*subject_id];
    const auto value = clean_literal(obj->value);
    if (value.empty()) continue;
    if (pred->value == kLabelPredicate) {
      if (item.label.empty()) item.label = value;
    } else if (pred->value == kAltLabelPredicate) {
      item.aliases.push_back(value);
    } else if (pred->value == kDescriptionPredicate) {
      if (item.description.empty()) item.description = value;
    }
  }

  for (const auto& id : item_order) {
    NodeRecord n;
    n.id = id;
    if (auto it = texts.find(id); it != texts.end()) {
      n.label = it->second.label;
      n.aliases = it->second.aliases;
      if (!it->second.description.empty()) n.other["description"] = it->second.description;
    }
    b.add_node(std::move(n));
  }
  for (auto& [child, parent] : pairs) b.add_edge(child, kSubClassOf, parent);
  return std::move(b).finish();
}

}  // namespace kgforge::importers
