#include "n905/commonsense/hasa.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "n905/util/strings.hpp"

namespace n905 {

std::vector<EntityId> HasAKnowledgeBase::all_entities() const {
    std::vector<EntityId> out;
    for (const auto& [loc, objs] : by_location) {
        out.push_back(loc);
        out.insert(out.end(), objs.begin(), objs.end());
    }
    return out;
}

HasAKnowledgeBase parse_hasa(const std::string& content, const std::string& origin) {
    HasAKnowledgeBase kb;
    std::istringstream in(content);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> f = split(line, '\t');
        if (f.size() != 2 || trim(f[0]).empty() || trim(f[1]).empty()) {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": expected \"location<TAB>object\"");
        }
        kb.by_location[canonicalize(f[0])].insert(canonicalize(f[1]));
    }
    return kb;
}

HasAKnowledgeBase load_hasa(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open HasA knowledge base: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_hasa(ss.str(), path);
}

std::vector<Triple> infer_hasa(const HasAKnowledgeBase& kb, const EntityId& location) {
    std::vector<Triple> out;
    auto it = kb.by_location.find(location);
    if (it == kb.by_location.end()) return out;
    for (const EntityId& obj : it->second) {
        out.push_back(Triple{location, RelationLabel::HasA, obj, TripleSource::InferredHasA});
        out.push_back(Triple{obj, RelationLabel::In, location, TripleSource::InferredHasA});
    }
    return out;
}

}  // namespace n905
