#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "n905/kg/graph.hpp"

namespace n905 {

/// Fixed entity index for one experiment run: sorted union of the game's
/// entities and everything the commonsense sources can mention, so no
/// inference ever produces a dangling feature.
class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::vector<EntityId> entities, int hash_bins);

    int index_of(const EntityId& e) const {  // -1 if unknown
        auto it = index_.find(e);
        return it == index_.end() ? -1 : it->second;
    }
    bool contains(const EntityId& e) const { return index_.count(e) > 0; }

    const std::vector<EntityId>& entities() const { return entities_; }
    int entity_count() const { return static_cast<int>(entities_.size()); }
    int hash_bins() const { return hash_bins_; }
    int feature_dim() const { return entity_count() + hash_bins_; }

private:
    std::vector<EntityId> entities_;
    std::map<EntityId, int> index_;
    int hash_bins_ = 64;
};

/// Bag-of-entities block (one bit per known entity in the graph) plus a
/// hashed bag-of-words block over the last observation, counts clipped
/// to one. Stands in for the learned graph encoder.
Eigen::VectorXd encode(const KnowledgeGraph& kg, const std::string& last_observation,
                       const Vocabulary& vocab);

}  // namespace n905
