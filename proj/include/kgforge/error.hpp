// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgforge {

enum class ErrorCode {
  kMalformedRow,
  kInvalidDatasource,
  kProvenanceParse,
  kUnserializable,
  kWeightRange,
  kSchema,
  kStructural,
  kIo,
  kIndexing,
  kContract,
  kUndefinedSimilarity,
  kEmptyGraph,
  kProvider,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Counts rows skipped by a batch operation. Only the first few messages are
// kept so that a bad multi-million-row dump cannot exhaust memory.
struct Diagnostics {
  static constexpr std::size_t kMaxMessages = 50;

  std::size_t skipped = 0;
  std::vector<std::string> messages;

  void skip(std::string message);
  void merge(const Diagnostics& other);
};

}  // namespace kgforge
