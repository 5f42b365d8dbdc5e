#pragma once

#include <string>
#include <string_view>

namespace n905 {

/// Canonical entity identifier: lowercase, article-free, underscores for
/// spaces. The reserved id for the player is "player".
using EntityId = std::string;

inline constexpr const char* kPlayerEntity = "player";

/// "the end table" -> "end_table". Throws std::invalid_argument if nothing
/// remains after stripping articles and whitespace.
EntityId canonicalize(std::string_view phrase);

bool is_canonical(std::string_view s);

}  // namespace n905
