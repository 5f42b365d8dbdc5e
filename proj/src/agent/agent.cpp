#include "n905/agent/agent.hpp"

#include <stdexcept>

namespace n905 {

std::string variant_name(AgentVariant v) {
    switch (v) {
        case AgentVariant::Baseline: return "baseline";
        case AgentVariant::HasA: return "hasa";
        case AgentVariant::QA: return "qa";
        case AgentVariant::Shaped: return "shaped";
    }
    return "?";
}

AgentVariant variant_from_name(const std::string& name) {
    if (name == "baseline") return AgentVariant::Baseline;
    if (name == "hasa") return AgentVariant::HasA;
    if (name == "qa") return AgentVariant::QA;
    if (name == "shaped") return AgentVariant::Shaped;
    throw std::invalid_argument("unknown agent variant: " + name);
}

AgentContext make_agent_context(const GameSpec& spec, const ExtractionRules& rules,
                                const HasAKnowledgeBase& hasa, const FactBase& facts,
                                const SequenceModel& sequence, const ShapingConfig& shaping,
                                int hash_bins) {
    AgentContext ctx;
    ctx.spec = &spec;
    ctx.rules = &rules;
    ctx.hasa = &hasa;
    ctx.facts = &facts;
    ctx.questions = default_questions();
    ctx.sequence = &sequence;
    ctx.shaping = shaping;
    std::vector<EntityId> all = spec.all_entities();
    for (EntityId e : hasa.all_entities()) all.push_back(std::move(e));
    for (EntityId e : facts.all_entities()) all.push_back(std::move(e));
    ctx.vocab = Vocabulary(std::move(all), hash_bins);
    ctx.space = ActionSpace(spec, ctx.vocab);
    return ctx;
}

const std::vector<Triple>& Agent::extract_cached(const std::string& text,
                                                 const EntityId& loc) {
    std::string key = loc;
    key += '\x1f';
    key += text;
    auto it = extract_cache_.find(key);
    if (it != extract_cache_.end()) return it->second;
    auto [ins, _] = extract_cache_.emplace(std::move(key), extract(text, loc, *ctx_->rules));
    return ins->second;
}

std::vector<Triple> Agent::augment(const EntityId& location, const KnowledgeGraph& kg) const {
    switch (variant_) {
        case AgentVariant::HasA: return infer_hasa(*ctx_->hasa, location);
        case AgentVariant::QA: return qa_infer(*ctx_->facts, ctx_->questions, location, kg);
        default: return {};
    }
}

Agent::ActResult Agent::act(const PolicyParameters& params, const KnowledgeGraph& kg,
                            const std::string& last_observation,
                            const std::vector<std::string>& history, Rng& rng) const {
    Eigen::VectorXd s = encode(kg, last_observation, ctx_->vocab);
    std::vector<ActionCommand> candidates = ctx_->space.generate_candidates(kg);
    Eigen::VectorXd dist = policy_distribution(params, s, candidates, ctx_->space);
    if (variant_ == AgentVariant::Shaped) {
        dist = rerank(candidates, dist, *ctx_->sequence, history, ctx_->shaping);
    }
    int idx = rng.sample_index(dist);
    return ActResult{candidates[static_cast<size_t>(idx)], dist[idx]};
}

EpisodeResult Agent::run_episode(Engine& engine, const Observation& first_obs,
                                 const PolicyParameters& params, const TrainingConfig& cfg,
                                 Rng& rng) {
    EpisodeResult result;
    KnowledgeGraph kg;
    std::set<EntityId> augmented_rooms;
    std::vector<std::string> history;
    Observation obs = first_obs;

    // Candidate snapshot, rebuilt only when the entity set grows.
    std::shared_ptr<const std::vector<ActionCommand>> candidates;
    size_t candidates_entities = static_cast<size_t>(-1);

    for (int t = 0; t < cfg.step_cap; ++t) {
        kg.absorb(extract_cached(obs.text, obs.location_id));
        if (variant_ == AgentVariant::HasA || variant_ == AgentVariant::QA) {
            if (augmented_rooms.insert(obs.location_id).second) {
                kg.absorb(augment(obs.location_id, kg));
            }
        }
        if (kg.entities().size() != candidates_entities) {
            candidates = std::make_shared<const std::vector<ActionCommand>>(
                ctx_->space.generate_candidates(kg));
            candidates_entities = kg.entities().size();
        }

        Eigen::VectorXd s = encode(kg, obs.text, ctx_->vocab);
        Eigen::VectorXd policy_dist = policy_distribution(params, s, *candidates, ctx_->space);
        Eigen::VectorXd sampled = policy_dist;
        double grad_scale = 1.0;
        if (variant_ == AgentVariant::Shaped) {
            sampled = rerank(*candidates, policy_dist, *ctx_->sequence, history, ctx_->shaping);
            grad_scale = 1.0 - ctx_->shaping.lambda;
        }
        int chosen = rng.sample_index(sampled);

        TrajectoryStep step;
        step.features = std::move(s);
        step.candidates = candidates;
        step.dist = std::move(sampled);
        step.chosen = chosen;
        step.grad_scale = grad_scale;
        step.value = params.critic.dot(step.features);

        StepResult sr = engine.step((*candidates)[static_cast<size_t>(chosen)]);
        step.reward = sr.obs.reward;
        result.total_reward += sr.obs.reward;
        result.steps += 1;
        if (sr.checkpoint_fired > 0) {
            result.checkpoint_steps[static_cast<size_t>(sr.checkpoint_fired - 1)] = result.steps;
        }
        history.push_back((*candidates)[static_cast<size_t>(chosen)].surface);
        result.trajectory.steps.push_back(std::move(step));

        obs = std::move(sr.obs);
        if (obs.done) break;
    }
    return result;
}

}  // namespace n905
