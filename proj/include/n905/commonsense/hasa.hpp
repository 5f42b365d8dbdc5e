#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "n905/extract/triple.hpp"

namespace n905 {

/// Static location-type -> characteristic-objects map standing in for a
/// learned HasA inference model.
struct HasAKnowledgeBase {
    std::map<EntityId, std::set<EntityId>> by_location;

    std::vector<EntityId> all_entities() const;
};

/// Parses TSV "location<TAB>object" lines. Throws with the line number on
/// malformed input. An empty file is a valid empty knowledge base.
HasAKnowledgeBase load_hasa(const std::string& path);
HasAKnowledgeBase parse_hasa(const std::string& content, const std::string& origin);

/// For each object o associated with the location: <location, HasA, o> and
/// <o, In, location>, all tagged InferredHasA. Unknown locations yield
/// nothing. Pure.
std::vector<Triple> infer_hasa(const HasAKnowledgeBase& kb, const EntityId& location);

}  // namespace n905
