// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include <iterator>
#include <unordered_map>

#include "builder.hpp"
#include "kgforge/text.hpp"

namespace kgforge::importers {

namespace {

using nlohmann::json;

std::string json_id(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return {};
}

std::string object_name(const json& obj) {
  if (auto it = obj.find("names"); it != obj.end() && it->is_array() && !it->empty() &&
                                   it->front().is_string()) {
    return it->front().get<std::string>();
  }
  if (auto it = obj.find("name"); it != obj.end() && it->is_string()) return it->get<std::string>();
  return {};
}

std::vector<std::string> string_list(const json& parent, const char* key) {
  std::vector<std::string> out;
  auto it = parent.find(key);
  if (it == parent.end() || !it->is_array()) return out;
  for (const auto& v : *it) {
    if (v.is_string()) out.push_back(v.get<std::string>());
  }
  return out;
}

class ImageReader {
 public:
  explicit ImageReader(detail::GraphBuilder& b) : b_(b) {}

  void read(const json& image, std::size_t index) {
    const std::string image_id = json_id(image.value("image_id", json()));
    if (image_id.empty()) {
      b_.diagnostics().skip("image #" + std::to_string(index) + " has no image_id");
      return;
    }
    image_node_ = "vg:I" + image_id;
    image_id_ = image_id;
    b_.add_node(image_node_, "I" + image_id);

    std::unordered_map<std::string, std::string> object_nodes;
    for (const auto& obj : image.value("objects", json::array())) {
      const auto node = label_node(object_name(obj));
      if (!node) {
        b_.diagnostics().skip("image " + image_id + ": object without a name");
        continue;
      }
      object_nodes[json_id(obj.value("object_id", json()))] = *node;
      b_.add_edge(*node, kVgInImage, image_node_, std::nullopt, provenance());
      link_synsets(*node, obj);
      for (const auto& attribute : string_list(obj, "attributes")) {
        const auto attr = label_node(attribute);
        if (!attr) continue;
        b_.add_edge(*node, kRelatedTo, *attr, std::nullopt, provenance());
        b_.add_edge(*attr, kRelatedTo, *node, std::nullopt, provenance());
        b_.add_edge(*attr, kVgInImage, image_node_, std::nullopt, provenance());
      }
    }

    for (const auto& rel : image.value("relationships", json::array())) {
      const auto subj = object_nodes.find(json_id(rel.value("subject_id", json())));
      const auto obj = object_nodes.find(json_id(rel.value("object_id", json())));
      if (subj == object_nodes.end() || obj == object_nodes.end()) {
        b_.diagnostics().skip("image " + image_id + ": relationship " +
                              json_id(rel.value("relationship_id", json())) +
                              " references a missing object");
        continue;
      }
      const auto rel_node = label_node(rel.value("predicate", std::string()));
      if (!rel_node) {
        b_.diagnostics().skip("image " + image_id + ": relationship without a predicate");
        continue;
      }
      b_.add_edge(*rel_node, kVgSubject, subj->second, std::nullopt, provenance());
      b_.add_edge(*rel_node, kVgObject, obj->second, std::nullopt, provenance());
      b_.add_edge(subj->second, kRelatedTo, obj->second, std::nullopt, provenance());
      b_.add_edge(obj->second, kRelatedTo, subj->second, std::nullopt, provenance());
      b_.add_edge(*rel_node, kVgInImage, image_node_, std::nullopt, provenance());
      link_synsets(*rel_node, rel);
    }
  }

 private:
  std::optional<std::string> label_node(std::string_view raw) {
    const auto label = vg_label(raw);
    if (label.empty()) return std::nullopt;
    std::string id = "vg:" + underscore_id(label);
    Provenance other = Provenance::object();
    other["image_id"] = image_id_;
    b_.add_node(id, label, std::nullopt, std::move(other));
    return id;
  }

  void link_synsets(const std::string& node, const json& entity) {
    for (const auto& synset : string_list(entity, "synsets")) {
      auto parsed = detail::parse_synset_name(synset);
      if (!parsed) {
        b_.diagnostics().skip("image " + image_id_ + ": malformed synset '" + synset + "'");
        continue;
      }
      const std::string wn_node = "wn:" + synset;
      b_.add_node(wn_node, detail::synset_label(*parsed), parsed->pos);
      b_.add_edge(node, kPWordnetSynset, wn_node, std::nullopt, provenance());
    }
  }

  Provenance provenance() const {
    Provenance p = Provenance::object();
    p["image_id"] = image_id_;
    return p;
  }

  detail::GraphBuilder& b_;
  std::string image_node_;
  std::string image_id_;
};

}  // namespace

ImportResult import_visual_genome(std::istream& raw) {
  json doc;
  try {
    doc = json::parse(std::istreambuf_iterator<char>(raw), std::istreambuf_iterator<char>());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedRow, std::string("Visual Genome JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::kStructural, "Visual Genome input must be a JSON array of images");
  }
  detail::GraphBuilder builder(Source::kVisualGenome);
  ImageReader reader(builder);
  std::size_t index = 0;
  for (const auto& image : doc) {
    if (image.is_object()) {
      try {
        reader.read(image, index);
      } catch (const json::type_error& e) {
        builder.diagnostics().skip("image #" + std::to_string(index) + ": " + e.what());
      }
    } else {
      builder.diagnostics().skip("image #" + std::to_string(index) + " is not an object");
    }
    ++index;
  }
  return std::move(builder).finish();
}

}  // namespace kgforge::importers
