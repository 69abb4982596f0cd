// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include <cstdint>
#include <fstream>
#include <sstream>

#include "kgforge/linker.hpp"
#include "kgforge/text.hpp"

namespace kgforge::linker {

FileEmbeddingProvider::FileEmbeddingProvider(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kProvider, path.string() + ":" + std::to_string(line_no) +
                                            ": expected key<TAB>vector");
    }
    std::vector<double> values;
    std::istringstream cells(line.substr(tab + 1));
    std::string cell;
    while (cells >> cell) {
      auto v = text::parse_double(cell);
      if (!v) {
        throw Error(ErrorCode::kProvider,
                    path.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
      values.push_back(*v);
    }
    if (dim_ == 0) dim_ = values.size();
    if (values.empty() || values.size() != dim_) {
      throw Error(ErrorCode::kProvider, path.string() + ":" + std::to_string(line_no) +
                                            ": vector length " + std::to_string(values.size()) +
                                            ", expected " + std::to_string(dim_));
    }
    vectors_[line.substr(0, tab)] =
        Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  }
}

FileEmbeddingProvider::FileEmbeddingProvider(std::unordered_map<std::string, Eigen::VectorXd> vectors,
                                             std::size_t dim)
    : vectors_(std::move(vectors)), dim_(dim) {
  for (const auto& [key, v] : vectors_) {
    if (static_cast<std::size_t>(v.size()) != dim_) {
      throw Error(ErrorCode::kProvider, "vector for " + key + " has the wrong length");
    }
  }
}

Eigen::VectorXd FileEmbeddingProvider::embed(const std::string& key, const std::string&) const {
  auto it = vectors_.find(key);
  if (it == vectors_.end()) throw Error(ErrorCode::kProvider, "no embedding for " + key);
  return it->second;
}

Eigen::VectorXd HashedBagOfWordsProvider::embed(const std::string&, const std::string& text) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
  for (const auto& token : text::tokenize(text)) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : token) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    v[static_cast<Eigen::Index>(h % dim_)] += 1.0;
  }
  return v;
}

}  // namespace kgforge::linker
