// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgforge contributors

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgforge::text {

std::vector<std::string_view> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string_view trim(std::string_view s);

// ASCII-only case folding; bytes >= 0x80 pass through untouched.
std::string to_lower(std::string_view s);

// Trims and collapses every run of whitespace into a single space.
std::string collapse_whitespace(std::string_view s);

// Key used for exact label comparison: case-folded, whitespace-collapsed.
std::string label_key(std::string_view label);

// Splits on every non-alphanumeric ASCII byte and case-folds. Non-ASCII bytes
// count as word characters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view s);

// Shortest decimal that round-trips, always carrying a fractional part
// ("1.0", "0.25").
std::string format_weight(double w);

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);
bool contains_line_break_or_tab(std::string_view s);

}  // namespace kgforge::text
