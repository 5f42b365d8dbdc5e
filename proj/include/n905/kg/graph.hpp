#pragma once

#include <set>
#include <string>
#include <vector>

#include "n905/extract/triple.hpp"

namespace n905 {

/// The agent's belief state: a monotonically growing set of triples keyed
/// on (subject, relation, object). A graph value is immutable once built;
/// update() returns a new value.
class KnowledgeGraph {
public:
    KnowledgeGraph() = default;

    /// Union of this graph and the new triples. Duplicates keep a single
    /// copy; an Observed duplicate wins over an inferred one.
    KnowledgeGraph update(const std::vector<Triple>& additions) const;

    /// In-place update for a uniquely owned graph (same semantics as
    /// update); returns whether anything changed.
    bool absorb(const std::vector<Triple>& additions);

    bool contains_entity(const EntityId& e) const { return entities_.count(e) > 0; }
    bool contains(const Triple& t) const { return triples_.count(t) > 0; }

    const std::set<Triple>& triples() const { return triples_; }
    const std::set<EntityId>& entities() const { return entities_; }
    size_t size() const { return triples_.size(); }

    /// Deterministic sorted dump, one "s<TAB>r<TAB>o<TAB>source" per line.
    std::string dump() const;

    friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
        if (a.triples_.size() != b.triples_.size()) return false;
        auto it = b.triples_.begin();
        for (const Triple& t : a.triples_) {
            if (!(t == *it) || t.source != it->source) return false;
            ++it;
        }
        return true;
    }

private:
    std::set<Triple> triples_;
    std::set<EntityId> entities_;
};

}  // namespace n905
