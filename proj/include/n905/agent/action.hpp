#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "n905/engine/world.hpp"
#include "n905/kg/features.hpp"

namespace n905 {

/// One command schema the agent can instantiate: a verb with slot filler
/// classes drawn from the game dictionary.
struct ActionTemplate {
    std::string verb;
    int arity = 0;
    std::vector<std::string> classes;
};

/// Template list plus the command featurizer: a command's feature vector is
/// a one-hot verb block followed by an entity-presence block over the
/// vocabulary.
class ActionSpace {
public:
    ActionSpace() = default;
    ActionSpace(const GameSpec& spec, const Vocabulary& vocab);

    const std::vector<ActionTemplate>& templates() const { return templates_; }
    int action_dim() const { return verb_count_ + vocab_.entity_count(); }

    /// Every template instantiated with every graph entity its filler rule
    /// permits, in template order then lexicographic argument order.
    /// Zero-arity commands are always present.
    std::vector<ActionCommand> generate_candidates(const KnowledgeGraph& kg) const;

    /// Sparse nonzero indices of a command's feature vector.
    void feature_indices(const ActionCommand& cmd, std::vector<int>& out) const;

    /// Dense expectation of command features under a distribution.
    Eigen::VectorXd expected_features(const std::vector<ActionCommand>& candidates,
                                      const Eigen::VectorXd& dist) const;

private:
    const GameSpec* spec_ = nullptr;
    Vocabulary vocab_;  // owned copy: the space must stay movable
    std::vector<ActionTemplate> templates_;
    std::map<std::string, int> verb_index_;
    int verb_count_ = 0;
};

}  // namespace n905
