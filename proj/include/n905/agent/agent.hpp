#pragma once

#include <array>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "n905/agent/a2c.hpp"
#include "n905/commonsense/hasa.hpp"
#include "n905/commonsense/qa.hpp"
#include "n905/commonsense/sequence.hpp"
#include "n905/extract/rules.hpp"
#include "n905/kg/features.hpp"
#include "n905/util/rng.hpp"

namespace n905 {

/// Baseline: observed graph only. HasA/QA: the graph is augmented by the
/// respective commonsense source. Shaped: observed graph, but sampling is
/// re-ranked by the sequence scorer.
enum class AgentVariant { Baseline, HasA, QA, Shaped };

std::string variant_name(AgentVariant v);
AgentVariant variant_from_name(const std::string& name);  // throws on unknown

/// Shared per-run assets: game, rules, commonsense sources, vocabulary and
/// action space. Immutable during a run.
struct AgentContext {
    const GameSpec* spec = nullptr;
    const ExtractionRules* rules = nullptr;
    const HasAKnowledgeBase* hasa = nullptr;
    const FactBase* facts = nullptr;
    QuestionSet questions;
    const SequenceModel* sequence = nullptr;
    ShapingConfig shaping;
    Vocabulary vocab;
    ActionSpace space;
};

/// Builds the vocabulary (game entities plus everything the commonsense
/// sources can mention) and the action space.
AgentContext make_agent_context(const GameSpec& spec, const ExtractionRules& rules,
                                const HasAKnowledgeBase& hasa, const FactBase& facts,
                                const SequenceModel& sequence, const ShapingConfig& shaping,
                                int hash_bins = 64);

struct EpisodeResult {
    Trajectory trajectory;
    int total_reward = 0;
    int steps = 0;
    std::array<int, 6> checkpoint_steps{};  // first-hit step per ordinal, 0 = never
};

class Agent {
public:
    Agent(const AgentContext& ctx, AgentVariant variant) : ctx_(&ctx), variant_(variant) {}

    AgentVariant variant() const { return variant_; }

    struct ActResult {
        ActionCommand command;
        double probability;  // under the distribution actually sampled from
    };

    /// One sampled action for a given belief state.
    ActResult act(const PolicyParameters& params, const KnowledgeGraph& kg,
                  const std::string& last_observation,
                  const std::vector<std::string>& history, Rng& rng) const;

    /// observe -> extract -> augment -> encode -> act -> step, until done
    /// or the step cap. The engine must be freshly reset by the caller.
    EpisodeResult run_episode(Engine& engine, const Observation& first_obs,
                              const PolicyParameters& params, const TrainingConfig& cfg,
                              Rng& rng);

private:
    const std::vector<Triple>& extract_cached(const std::string& text, const EntityId& loc);
    std::vector<Triple> augment(const EntityId& location, const KnowledgeGraph& kg) const;

    const AgentContext* ctx_;
    AgentVariant variant_;
    std::unordered_map<std::string, std::vector<Triple>> extract_cache_;
};

}  // namespace n905
