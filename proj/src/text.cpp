// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#include "kgforge/text.hpp"

#include <charconv>
#include <cctype>
#include <cstdlib>
#include <string>

#include "kgforge/error.hpp"

namespace kgforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedRow: return "malformed-row";
    case ErrorCode::kInvalidDatasource: return "invalid-datasource";
    case ErrorCode::kProvenanceParse: return "provenance-parse";
    case ErrorCode::kUnserializable: return "unserializable";
    case ErrorCode::kWeightRange: return "weight-range";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kStructural: return "structural";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kIndexing: return "indexing";
    case ErrorCode::kContract: return "contract";
    case ErrorCode::kUndefinedSimilarity: return "undefined-similarity";
    case ErrorCode::kEmptyGraph: return "empty-graph";
    case ErrorCode::kProvider: return "provider";
  }
  return "unknown";
}

void Diagnostics::skip(std::string message) {
  ++skipped;
  if (messages.size() < kMaxMessages) messages.push_back(std::move(message));
}

void Diagnostics::merge(const Diagnostics& other) {
  skipped += other.skipped;
  for (const auto& m : other.messages) {
    if (messages.size() >= kMaxMessages) break;
    messages.push_back(m);
  }
}

namespace text {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

}  // namespace

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : trim(s)) {
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string label_key(std::string_view label) { return to_lower(collapse_whitespace(label)); }

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  for (char c : s) {
    if (is_word_byte(c)) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::string format_weight(double w) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
  std::string out(buf, ptr);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<long long> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool contains_line_break_or_tab(std::string_view s) {
  return s.find_first_of("\t\n\r") != std::string_view::npos;
}

}  // namespace text
}  // namespace kgforge
