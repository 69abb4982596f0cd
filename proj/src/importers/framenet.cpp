// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include <iterator>
#include <unordered_set>

#include "builder.hpp"
#include "kgforge/text.hpp"

namespace kgforge::importers {

namespace {

using nlohmann::json;

// "Change_of_leadership" -> "change_of_leadership"
std::string fn_key(std::string_view name) { return underscore_id(text::label_key(name)); }

std::string fn_label(std::string_view name) {
  std::string out = text::to_lower(name);
  for (auto& c : out) {
    if (c == '_') c = ' ';
  }
  return text::collapse_whitespace(out);
}

std::string required_string(const json& obj, const char* key, std::string_view context) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string() || it->get<std::string>().empty()) {
    throw Error(ErrorCode::kStructural,
                std::string(context) + " is missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

class FrameNetReader {
 public:
  explicit FrameNetReader(detail::GraphBuilder& b) : b_(b) {}

  void read(const json& doc) {
    for (const auto& st : doc.value("semtypes", json::array())) {
      const auto name = st.is_string() ? st.get<std::string>() : required_string(st, "name", "semtype");
      const auto id = "fn:st:" + fn_key(name);
      semtypes_.insert(id);
      b_.add_node(id, fn_label(name));
    }
    for (const auto& frame : doc.value("frames", json::array())) {
      const auto name = required_string(frame, "name", "frame");
      const auto id = "fn:frame:" + fn_key(name);
      frames_.insert(id);
      b_.add_node(id, fn_label(name));
    }
    for (const auto& frame : doc.value("frames", json::array())) {
      const auto frame_id = "fn:frame:" + fn_key(frame.at("name").get<std::string>());
      for (const auto& fe : frame.value("fes", json::array())) {
        const auto name = fe.is_string() ? fe.get<std::string>() : required_string(fe, "name", "FE");
        const auto fe_id = "fn:fe:" + fn_key(name);
        b_.add_node(fe_id, fn_label(name));
        b_.add_edge(frame_id, kFnHasFrameElement, fe_id);
        if (fe.is_object() && fe.contains("semtype")) {
          const auto st_id = "fn:st:" + fn_key(required_string(fe, "semtype", "FE"));
          require(semtypes_, st_id, "semantic type");
          b_.add_edge(fe_id, kFnHasSemType, st_id);
        }
      }
      for (const auto& lu : frame.value("lus", json::array())) {
        if (!lu.is_string()) throw Error(ErrorCode::kStructural, "lexical unit must be a string");
        add_lexical_unit(frame_id, lu.get<std::string>());
      }
    }
    for (const auto& rel : doc.value("frame_relations", json::array())) {
      relation(rel, framenet_frame_relations(), "fn:frame:", frames_, "frame");
    }
    for (const auto& rel : doc.value("semtype_relations", json::array())) {
      relation(rel, framenet_semtype_relations(), "fn:st:", semtypes_, "semantic type");
    }
  }

 private:
  void add_lexical_unit(const std::string& frame_id, const std::string& name) {
    // "perform.v": lemma before the last dot, pos after it.
    const auto trimmed = text::collapse_whitespace(text::to_lower(name));
    const auto dot = trimmed.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == trimmed.size()) {
      b_.diagnostics().skip("lexical unit '" + name + "' lacks a .pos suffix");
      return;
    }
    const auto id = "fn:lu:" + underscore_id(trimmed);
    b_.add_node(id, trimmed.substr(0, dot), trimmed.substr(dot + 1));
    b_.add_edge(frame_id, kFnHasLexicalUnit, id);
  }

  void relation(const json& rel, const std::set<std::string, std::less<>>& vocabulary,
                const std::string& prefix, const std::unordered_set<std::string>& registered,
                std::string_view kind) {
    const auto type = "fn:" + required_string(rel, "type", "relation");
    if (!vocabulary.count(type)) {
      throw Error(ErrorCode::kStructural,
                  "relation type " + type + " is not one of the " +
                      std::to_string(vocabulary.size()) + " " + std::string(kind) + " relations");
    }
    const auto from = prefix + fn_key(required_string(rel, "from", "relation"));
    const auto to = prefix + fn_key(required_string(rel, "to", "relation"));
    require(registered, from, kind);
    require(registered, to, kind);
    b_.add_edge(from, type, to);
  }

  static void require(const std::unordered_set<std::string>& registered, const std::string& id,
                      std::string_view kind) {
    if (!registered.count(id)) {
      throw Error(ErrorCode::kStructural, id + " is not a registered " + std::string(kind));
    }
  }

  detail::GraphBuilder& b_;
  std::unordered_set<std::string> frames_;
  std::unordered_set<std::string> semtypes_;
};

}  // namespace

ImportResult import_framenet(std::istream& raw) {
  const std::string content{std::istreambuf_iterator<char>(raw), std::istreambuf_iterator<char>()};
  detail::GraphBuilder builder(Source::kFrameNet);
  if (text::trim(content).empty()) return std::move(builder).finish();
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedRow, std::string("FrameNet JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kStructural, "FrameNet input must be a JSON object");
  try {
    FrameNetReader(builder).read(doc);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kStructural, std::string("FrameNet input: ") + e.what());
  }
  return std::move(builder).finish();
}

}  // namespace kgforge::importers
