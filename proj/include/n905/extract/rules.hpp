#pragma once

#include <map>
#include <string>
#include <vector>

#include "n905/extract/triple.hpp"

namespace n905 {

enum class PatternKind { Listing, Exit, Containment, Wearing, Taken, Default };

/// One extraction pattern: a word template with {name} captures. Captures
/// named "dir" bind a single word; all others bind lazily until the next
/// literal run (or to the end of the sentence).
struct Pattern {
    PatternKind kind;
    std::string source_template;
    struct Piece {
        bool is_capture = false;
        std::string text;  // literal word, or capture name
    };
    std::vector<Piece> pieces;
};

/// Ordered pattern list plus the noun lexicon mapping surface phrases to
/// canonical entity ids. Rooms are intentionally absent from the lexicon;
/// exit patterns canonicalize their room capture directly.
struct ExtractionRules {
    std::vector<Pattern> patterns;
    std::map<std::string, EntityId> lexicon;  // canonicalized phrase -> entity
    size_t max_phrase_words = 1;
};

/// Loads a line-oriented rules file: "patternkind<TAB>template" declares a
/// pattern, any other "phrase<TAB>entity_id" line declares a lexicon noun.
/// Throws on malformed lines or conflicting duplicate noun declarations.
ExtractionRules load_rules(const std::string& path);
ExtractionRules parse_rules(const std::string& content, const std::string& origin);

/// Returns one warning per noun phrase that the lexicon does not cover.
std::vector<std::string> lexicon_coverage_warnings(
    const ExtractionRules& rules, const std::vector<std::string>& noun_phrases);

/// Applies the rules to one observation text. Pure; returns deduplicated
/// triples, all with source Observed.
std::vector<Triple> extract(const std::string& text, const EntityId& location,
                            const ExtractionRules& rules);

}  // namespace n905
