#include "n905/agent/action.hpp"

#include "n905/kg/filter.hpp"

namespace n905 {

ActionSpace::ActionSpace(const GameSpec& spec, const Vocabulary& vocab)
    : spec_(&spec), vocab_(vocab) {
    for (const VerbDef& v : spec.verbs) {
        ActionTemplate t;
        t.verb = v.name;
        t.arity = v.arity;
        t.classes = v.classes;
        verb_index_[v.name] = verb_count_++;
        templates_.push_back(std::move(t));
    }
}

std::vector<ActionCommand> ActionSpace::generate_candidates(const KnowledgeGraph& kg) const {
    std::vector<ActionCommand> out;
    const std::set<EntityId>& entities = kg.entities();
    auto make = [&](const std::string& verb, std::vector<EntityId> args) {
        ActionCommand c;
        c.verb = verb;
        c.args = std::move(args);
        c.surface = render_surface(*spec_->verb(verb), c.args, *spec_);
        out.push_back(std::move(c));
    };
    for (const ActionTemplate& t : templates_) {
        if (t.arity == 0) {
            make(t.verb, {});
        } else if (t.arity == 1) {
            for (const EntityId& e : entities) {
                if (entity_matches_class(*spec_, t.classes[0], e)) make(t.verb, {e});
            }
        } else {
            for (const EntityId& a : entities) {
                if (!entity_matches_class(*spec_, t.classes[0], a)) continue;
                for (const EntityId& b : entities) {
                    if (b == a) continue;
                    if (entity_matches_class(*spec_, t.classes[1], b)) make(t.verb, {a, b});
                }
            }
        }
    }
    return filter_commands(kg, out);
}

void ActionSpace::feature_indices(const ActionCommand& cmd, std::vector<int>& out) const {
    out.clear();
    auto vit = verb_index_.find(cmd.verb);
    if (vit != verb_index_.end()) out.push_back(vit->second);
    for (const EntityId& a : cmd.args) {
        int idx = vocab_.index_of(a);
        if (idx >= 0) out.push_back(verb_count_ + idx);
    }
}

Eigen::VectorXd ActionSpace::expected_features(const std::vector<ActionCommand>& candidates,
                                               const Eigen::VectorXd& dist) const {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(action_dim());
    std::vector<int> idx;
    for (size_t i = 0; i < candidates.size(); ++i) {
        double w = dist[static_cast<long>(i)];
        if (w == 0.0) continue;
        feature_indices(candidates[i], idx);
        for (int j : idx) mean[j] += w;
    }
    return mean;
}

}  // namespace n905
