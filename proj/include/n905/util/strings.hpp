#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace n905 {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

/// Splits on a single-character delimiter; keeps empty fields.
std::vector<std::string> split(std::string_view s, char delim);

/// Splits into whitespace-separated tokens; drops empty pieces.
std::vector<std::string> tokenize(std::string_view s);

/// Lowercase alphanumeric word tokens, punctuation stripped.
std::vector<std::string> word_tokens(std::string_view s);

/// Splits prose into sentences on . ! ? boundaries.
std::vector<std::string> split_sentences(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool starts_with(std::string_view s, std::string_view prefix);

/// FNV-1a, used wherever a platform-stable hash is required.
std::uint64_t fnv1a(std::string_view s);

}  // namespace n905
