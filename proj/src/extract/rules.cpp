#include "n905/extract/rules.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "n905/util/strings.hpp"

namespace n905 {

namespace {

std::optional<PatternKind> kind_from_name(const std::string& s) {
    if (s == "listing") return PatternKind::Listing;
    if (s == "exit") return PatternKind::Exit;
    if (s == "containment") return PatternKind::Containment;
    if (s == "wearing") return PatternKind::Wearing;
    if (s == "taken") return PatternKind::Taken;
    if (s == "default") return PatternKind::Default;
    return std::nullopt;
}

Pattern compile_pattern(PatternKind kind, const std::string& tmpl) {
    Pattern p;
    p.kind = kind;
    p.source_template = tmpl;
    for (const std::string& tok : tokenize(to_lower(tmpl))) {
        Pattern::Piece piece;
        if (tok.size() >= 2 && tok.front() == '{' && tok.back() == '}') {
            piece.is_capture = true;
            piece.text = tok.substr(1, tok.size() - 2);
        } else {
            piece.text = tok;
        }
        p.pieces.push_back(std::move(piece));
    }
    return p;
}

/// Tokenizes a sentence keeping "," as its own token; other punctuation is
/// dropped. Commas delimit list items.
std::vector<std::string> sentence_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    };
    for (char raw : s) {
        unsigned char c = static_cast<unsigned char>(raw);
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (c == ',') {
            flush();
            out.emplace_back(",");
        } else {
            flush();
        }
    }
    flush();
    return out;
}

using Tokens = std::vector<std::string>;
using Span = std::pair<size_t, size_t>;  // [begin, end)

/// Recursive lazy matcher. On success fills capture spans in template order
/// and reports the end of the match.
bool match_here(const Tokens& toks, size_t pos, const std::vector<Pattern::Piece>& pieces,
                size_t piece_idx, std::vector<Span>& captures, size_t& match_end) {
    if (piece_idx == pieces.size()) {
        match_end = pos;
        return true;
    }
    const Pattern::Piece& piece = pieces[piece_idx];
    if (!piece.is_capture) {
        if (pos < toks.size() && toks[pos] == piece.text) {
            return match_here(toks, pos + 1, pieces, piece_idx + 1, captures, match_end);
        }
        return false;
    }
    if (piece.text == "dir") {  // single-word capture
        if (pos >= toks.size() || toks[pos] == ",") return false;
        captures.push_back({pos, pos + 1});
        if (match_here(toks, pos + 1, pieces, piece_idx + 1, captures, match_end)) return true;
        captures.pop_back();
        return false;
    }
    if (piece_idx + 1 == pieces.size()) {
        // Trailing capture swallows the rest of the sentence.
        if (pos >= toks.size()) return false;
        captures.push_back({pos, toks.size()});
        match_end = toks.size();
        return true;
    }
    // Lazy multi-word capture: grow until the rest of the pattern matches.
    for (size_t end = pos + 1; end <= toks.size(); ++end) {
        captures.push_back({pos, end});
        if (match_here(toks, end, pieces, piece_idx + 1, captures, match_end)) return true;
        captures.pop_back();
    }
    return false;
}

struct Match {
    std::vector<Span> captures;
    size_t end = 0;
};

std::vector<Match> find_all(const Tokens& toks, const Pattern& p) {
    std::vector<Match> out;
    size_t pos = 0;
    while (pos < toks.size()) {
        Match m;
        if (match_here(toks, pos, p.pieces, 0, m.captures, m.end)) {
            out.push_back(m);
            pos = (m.end > pos) ? m.end : pos + 1;
        } else {
            ++pos;
        }
    }
    return out;
}

std::string span_text(const Tokens& toks, Span sp) {
    std::vector<std::string> words(toks.begin() + static_cast<long>(sp.first),
                                   toks.begin() + static_cast<long>(sp.second));
    return join(words, " ");
}

/// Longest lexicon phrase found inside a token span; empty if none.
EntityId scan_entity(const Tokens& toks, Span sp, const ExtractionRules& rules) {
    for (size_t len = rules.max_phrase_words; len >= 1; --len) {
        if (sp.first + len > sp.second) continue;
        for (size_t i = sp.first; i + len <= sp.second; ++i) {
            std::vector<std::string> words(toks.begin() + static_cast<long>(i),
                                           toks.begin() + static_cast<long>(i + len));
            auto it = rules.lexicon.find(join(words, "_"));
            if (it != rules.lexicon.end()) return it->second;
        }
    }
    return {};
}

/// Splits a capture into list items on "," and "and".
std::vector<Span> split_items(const Tokens& toks, Span sp) {
    std::vector<Span> items;
    size_t start = sp.first;
    for (size_t i = sp.first; i <= sp.second; ++i) {
        bool boundary = (i == sp.second) || toks[i] == "," || toks[i] == "and";
        if (boundary) {
            if (i > start) items.push_back({start, i});
            start = i + 1;
        }
    }
    return items;
}

}  // namespace

ExtractionRules parse_rules(const std::string& content, const std::string& origin) {
    ExtractionRules rules;
    std::istringstream in(content);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> fields = split(line, '\t');
        for (auto& f : fields) f = trim(f);
        if (fields.size() != 2 || fields[0].empty()) {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": expected two tab-separated fields");
        }
        if (auto kind = kind_from_name(to_lower(fields[0]))) {
            rules.patterns.push_back(compile_pattern(*kind, fields[1]));
            continue;
        }
        // Noun record: phrase -> entity id.
        EntityId key = canonicalize(fields[0]);
        EntityId value = fields[1];
        if (!is_canonical(value)) {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": entity id not canonical: " + value);
        }
        auto it = rules.lexicon.find(key);
        if (it != rules.lexicon.end() && it->second != value) {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": conflicting lexicon entry for \"" + fields[0] +
                                     "\": " + it->second + " vs " + value);
        }
        rules.lexicon[key] = value;
        size_t words = split(key, '_').size();
        if (words > rules.max_phrase_words) rules.max_phrase_words = words;
    }
    return rules;
}

ExtractionRules load_rules(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open rules file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_rules(ss.str(), path);
}

std::vector<std::string> lexicon_coverage_warnings(
    const ExtractionRules& rules, const std::vector<std::string>& noun_phrases) {
    std::vector<std::string> warnings;
    for (const std::string& phrase : noun_phrases) {
        if (!rules.lexicon.count(canonicalize(phrase))) {
            warnings.push_back("lexicon does not cover noun phrase: \"" + phrase + "\"");
        }
    }
    return warnings;
}

std::vector<Triple> extract(const std::string& text, const EntityId& location,
                            const ExtractionRules& rules) {
    std::set<Triple> out;
    auto add = [&](EntityId s, RelationLabel r, EntityId o) {
        if (s.empty() || o.empty()) return;
        out.insert(Triple{std::move(s), r, std::move(o), TripleSource::Observed});
    };

    for (const std::string& sentence : split_sentences(text)) {
        Tokens toks = sentence_tokens(sentence);
        if (toks.empty()) continue;
        for (const Pattern& p : rules.patterns) {
            switch (p.kind) {
                case PatternKind::Listing:
                    for (const Match& m : find_all(toks, p)) {
                        if (m.captures.size() != 2) continue;
                        EntityId place = scan_entity(toks, m.captures[0], rules);
                        for (Span item : split_items(toks, m.captures[1])) {
                            add(scan_entity(toks, item, rules), RelationLabel::On, place);
                        }
                    }
                    break;
                case PatternKind::Exit: {
                    std::vector<std::string> names;
                    for (const auto& piece : p.pieces) {
                        if (piece.is_capture) names.push_back(piece.text);
                    }
                    for (const Match& m : find_all(toks, p)) {
                        for (size_t ci = 0; ci < m.captures.size() && ci < names.size(); ++ci) {
                            if (names[ci] != "room") continue;
                            add(location, RelationLabel::ExitTo,
                                canonicalize(span_text(toks, m.captures[ci])));
                        }
                    }
                    break;
                }
                case PatternKind::Containment:
                    for (const Match& m : find_all(toks, p)) {
                        if (m.captures.size() != 2) continue;
                        EntityId thing = scan_entity(toks, m.captures[0], rules);
                        EntityId place = scan_entity(toks, m.captures[1], rules);
                        if (place.empty()) place = canonicalize(span_text(toks, m.captures[1]));
                        add(thing, RelationLabel::In, place);
                    }
                    break;
                case PatternKind::Wearing:
                    for (const Match& m : find_all(toks, p)) {
                        if (m.captures.size() != 1) continue;
                        for (Span item : split_items(toks, m.captures[0])) {
                            add(kPlayerEntity, RelationLabel::Wearing,
                                scan_entity(toks, item, rules));
                        }
                    }
                    break;
                case PatternKind::Taken:
                    for (const Match& m : find_all(toks, p)) {
                        if (m.captures.size() != 1) continue;
                        add(kPlayerEntity, RelationLabel::Has,
                            scan_entity(toks, m.captures[0], rules));
                    }
                    break;
                case PatternKind::Default: {
                    size_t i = 0;
                    while (i < toks.size()) {
                        size_t advance = 1;
                        for (size_t len = std::min(rules.max_phrase_words, toks.size() - i);
                             len >= 1; --len) {
                            std::vector<std::string> words(
                                toks.begin() + static_cast<long>(i),
                                toks.begin() + static_cast<long>(i + len));
                            auto it = rules.lexicon.find(join(words, "_"));
                            if (it != rules.lexicon.end()) {
                                if (it->second != location) {
                                    add(it->second, RelationLabel::In, location);
                                }
                                advance = len;
                                break;
                            }
                        }
                        i += advance;
                    }
                    break;
                }
            }
        }
    }
    return std::vector<Triple>(out.begin(), out.end());
}

}  // namespace n905
