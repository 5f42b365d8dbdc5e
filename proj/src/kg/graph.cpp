#include "n905/kg/graph.hpp"

namespace n905 {

KnowledgeGraph KnowledgeGraph::update(const std::vector<Triple>& additions) const {
    KnowledgeGraph out = *this;
    out.absorb(additions);
    return out;
}

bool KnowledgeGraph::absorb(const std::vector<Triple>& additions) {
    bool changed = false;
    for (const Triple& t : additions) {
        auto [it, inserted] = triples_.insert(t);
        if (inserted) {
            changed = true;
        } else if (it->source != TripleSource::Observed && t.source == TripleSource::Observed) {
            // Same key, stronger provenance: observation beats inference.
            auto hint = triples_.erase(it);
            triples_.insert(hint, t);
            changed = true;
        }
        entities_.insert(t.subject);
        entities_.insert(t.object);
    }
    return changed;
}

std::string KnowledgeGraph::dump() const {
    std::string out;
    for (const Triple& t : triples_) {
        out += to_line(t);
        out += '\n';
    }
    return out;
}

}  // namespace n905
