#include "n905/extract/entity.hpp"

#include <stdexcept>

#include "n905/util/strings.hpp"

namespace n905 {

namespace {
bool is_article(const std::string& w) {
    return w == "a" || w == "an" || w == "the" || w == "some";
}
}  // namespace

EntityId canonicalize(std::string_view phrase) {
    std::vector<std::string> words = word_tokens(phrase);
    std::vector<std::string> kept;
    for (auto& w : words) {
        if (!is_article(w)) kept.push_back(std::move(w));
    }
    if (kept.empty()) {
        throw std::invalid_argument("canonicalize: empty entity phrase: \"" +
                                    std::string(phrase) + "\"");
    }
    return join(kept, "_");
}

bool is_canonical(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::islower(static_cast<unsigned char>(c)) ||
              std::isdigit(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    }
    return true;
}

}  // namespace n905
