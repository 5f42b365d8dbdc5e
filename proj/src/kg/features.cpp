#include "n905/kg/features.hpp"

#include <algorithm>

#include "n905/util/strings.hpp"

namespace n905 {

Vocabulary::Vocabulary(std::vector<EntityId> entities, int hash_bins)
    : hash_bins_(hash_bins) {
    std::sort(entities.begin(), entities.end());
    entities.erase(std::unique(entities.begin(), entities.end()), entities.end());
    entities_ = std::move(entities);
    for (size_t i = 0; i < entities_.size(); ++i) {
        index_[entities_[i]] = static_cast<int>(i);
    }
}

Eigen::VectorXd encode(const KnowledgeGraph& kg, const std::string& last_observation,
                       const Vocabulary& vocab) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(vocab.feature_dim());
    for (const EntityId& e : kg.entities()) {
        int idx = vocab.index_of(e);
        if (idx >= 0) v[idx] = 1.0;
    }
    const int base = vocab.entity_count();
    for (const std::string& tok : word_tokens(last_observation)) {
        int bin = static_cast<int>(fnv1a(tok) % static_cast<std::uint64_t>(vocab.hash_bins()));
        v[base + bin] = 1.0;
    }
    return v;
}

}  // namespace n905
