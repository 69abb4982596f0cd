// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include <algorithm>
#include <regex>
#include <string>

#include "builder.hpp"
#include "kgforge/text.hpp"

namespace kgforge::importers {

namespace {

constexpr std::string_view kEnglishPrefix = "/c/en/";
constexpr std::string_view kExternalUrl = "/r/ExternalURL";

struct ConceptUri {
  std::string uri;                 // normalized, no trailing slash
  std::string term;                // "tropical_rainforest"
  std::optional<std::string> pos;  // "n"
};

std::optional<ConceptUri> parse_concept(std::string_view uri) {
  if (!text::starts_with(uri, kEnglishPrefix)) return std::nullopt;
  while (!uri.empty() && uri.back() == '/') uri.remove_suffix(1);
  auto parts = text::split(uri.substr(kEnglishPrefix.size()), '/');
  if (parts.empty() || parts[0].empty()) return std::nullopt;
  ConceptUri c;
  c.uri = std::string(uri);
  c.term = std::string(parts[0]);
  if (parts.size() > 1 && !parts[1].empty()) c.pos = std::string(parts[1]);
  return c;
}

std::string term_label(std::string_view term) {
  std::string out(term);
  for (auto& ch : out) {
    if (ch == '_') ch = ' ';
  }
  return out;
}

// "http://wordnet-rdf.princeton.edu/wn31/102086723-n" -> "02086723-n"
std::optional<std::string> wn31_offset(std::string_view url) {
  static const std::regex kPattern(R"(^https?://wordnet-rdf\.princeton\.edu/wn31/1?(\d{8})-([nvasr])/?$)");
  std::cmatch m;
  if (!std::regex_match(url.begin(), url.end(), m, kPattern)) return std::nullopt;
  return m[1].str() + "-" + m[2].str();
}

class ConceptNetReader {
 public:
  explicit ConceptNetReader(detail::GraphBuilder& b) : b_(b) {}

  // Emits the node for `c` plus the lemma/POS-form scaffolding around it.
  void touch(const ConceptUri& c) {
    const std::string lemma = std::string(kEnglishPrefix) + c.term;
    b_.add_node(c.uri, term_label(c.term), c.pos);
    if (!c.pos) return;
    const std::string pos_node = lemma + "/" + *c.pos;
    if (c.uri != pos_node) b_.add_node(pos_node, term_label(c.term), c.pos);
    b_.add_node(lemma, term_label(c.term));
    if (!pos_class_emitted_) {
      NodeRecord cls;
      cls.id = std::string(kPartOfSpeechClass);
      cls.label = "part of speech";
      cls.datasource = Datasource::kMowgli;
      b_.add_node(std::move(cls));
      pos_class_emitted_ = true;
    }
    b_.add_edge(lemma, kPosForm, pos_node);
    b_.add_edge(pos_node, kIsPosFormOf, lemma);
    b_.add_edge(pos_node, kSubClassOf, std::string(kPartOfSpeechClass));
  }

  void row(std::string_view line, std::size_t line_no) {
    auto f = text::split(line, '\t');
    if (f.size() < 5) {
      b_.diagnostics().skip("line " + std::to_string(line_no) + ": expected 5 fields");
      return;
    }
    const auto relation = f[1];
    auto start = parse_concept(f[2]);
    if (!start) return;  // non-English start node

    nlohmann::json meta;
    try {
      meta = nlohmann::json::parse(f[4]);
    } catch (const nlohmann::json::parse_error&) {
      b_.diagnostics().skip("line " + std::to_string(line_no) + ": bad metadata JSON");
      return;
    }
    if (!meta.is_object()) meta = nlohmann::json::object();

    if (relation == kExternalUrl) {
      auto offset = wn31_offset(f[3]);
      if (!offset) return;
      touch(*start);
      const std::string offset_node = "wn31:" + *offset;
      Provenance carrier = Provenance::object();
      carrier[std::string(kWn31OffsetKey)] = *offset;
      b_.add_node(start->uri, term_label(start->term), start->pos, carrier);
      b_.add_node(offset_node, *offset, std::string(offset->substr(offset->size() - 1)));
      b_.add_edge(start->uri, kOmWordnetOffset, offset_node);
      return;
    }

    if (!text::starts_with(relation, "/r/")) {
      b_.diagnostics().skip("line " + std::to_string(line_no) + ": relation " +
                            std::string(relation) + " is not a ConceptNet relation");
      return;
    }
    auto end = parse_concept(f[3]);
    if (!end) return;  // non-English end node

    std::optional<double> weight;
    Provenance other = Provenance::object();
    if (auto w = meta.find("weight"); w != meta.end() && w->is_number()) {
      const double raw = w->get<double>();
      if (raw < 0.0) {
        throw Error(ErrorCode::kWeightRange, "negative weight " + std::to_string(raw) +
                                                 " on line " + std::to_string(line_no));
      }
      if (raw > 1.0) other["raw_weight"] = raw;
      weight = std::min(raw, 1.0);
    }
    if (auto s = meta.find("surfaceText"); s != meta.end() && s->is_string()) {
      other["surface_text"] = s->get<std::string>();
    }

    touch(*start);
    touch(*end);
    b_.add_edge(start->uri, relation, end->uri, weight, std::move(other));
  }

 private:
  detail::GraphBuilder& b_;
  bool pos_class_emitted_ = false;
};

}  // namespace

ImportResult import_conceptnet(std::istream& raw, const SymmetricRelationSet& symmetric) {
  detail::GraphBuilder builder(Source::kConceptNet);
  ConceptNetReader reader(builder);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(raw, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    reader.row(line, line_no);
  }
  auto result = std::move(builder).finish();
  result.edges = symmetric_closure(result.edges, symmetric);
  return result;
}

}  // namespace kgforge::importers
