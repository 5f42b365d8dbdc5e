#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "n905/engine/game_spec.hpp"

namespace n905 {

enum class GameMode { Full, Ablated };

/// A parsed player command: verb plus zero to two entity arguments.
/// surface is the canonical rendering; parse(render(c)) == c.
struct ActionCommand {
    std::string verb;
    std::vector<EntityId> args;
    std::string surface;

    friend bool operator==(const ActionCommand& a, const ActionCommand& b) {
        return a.verb == b.verb && a.args == b.args;
    }
};

std::string render_surface(const VerbDef& v, const std::vector<EntityId>& args,
                           const GameSpec& spec);

/// Exact-match parse of "verb [noun] [noun]" with articles and particles
/// stripped. Returns nullopt for anything the grammar does not recognize.
std::optional<ActionCommand> parse_command(const GameSpec& spec, const std::string& text);

struct ObjectState {
    std::string location;  // room id or "player"
    bool worn = false;
    EntityId support;
    bool moved = false;
    std::set<std::string> tags;

    friend bool operator==(const ObjectState&, const ObjectState&) = default;
};

struct WorldState {
    std::string player_location;
    std::map<EntityId, ObjectState> objects;
    unsigned checkpoint_mask = 0;  // bit k-1 <=> ordinal k observed
    int step_count = 0;
    bool terminal = false;
    std::uint64_t seed = 0;

    bool mask_has(int ordinal) const { return (checkpoint_mask >> (ordinal - 1)) & 1u; }
    friend bool operator==(const WorldState&, const WorldState&) = default;
};

struct Observation {
    std::string text;
    std::string location_id;
    int reward = 0;
    bool done = false;
};

struct StepResult {
    WorldState state;
    Observation obs;
    bool applied = false;        // the verb's effect actually ran
    int checkpoint_fired = 0;    // ordinal, or 0
};

std::pair<WorldState, Observation> reset(const GameSpec& spec, GameMode mode,
                                         std::uint64_t seed);

/// Full room rendering for the player's current location. Ablated mode
/// suppresses the configured objects' mention and listing lines in the
/// ablated room; everything else is byte-identical to Full mode.
std::string render(const WorldState& state, const GameSpec& spec, GameMode mode);

/// Applies one command. Throws std::logic_error if state is terminal.
StepResult step(const WorldState& state, const GameSpec& spec, GameMode mode,
                const ActionCommand& command);

/// Text-level step: unparseable input becomes a no-op with failure text.
StepResult step_text(const WorldState& state, const GameSpec& spec, GameMode mode,
                     const std::string& text);

struct WalkthroughResult {
    int total_reward = 0;
    int steps = 0;
};

/// Runs spec.walkthrough from reset. Throws identifying the first failing
/// command if the script does not reach the terminal state.
WalkthroughResult run_walkthrough(const GameSpec& spec, GameMode mode);

/// Convenience wrapper owning (spec, mode, state); steps mutate in place.
class Engine {
public:
    Engine(const GameSpec& spec, GameMode mode) : spec_(&spec), mode_(mode) {}

    Observation reset(std::uint64_t seed) {
        auto [s, obs] = n905::reset(*spec_, mode_, seed);
        state_ = std::move(s);
        return obs;
    }
    StepResult step(const ActionCommand& cmd) {
        StepResult r = n905::step(state_, *spec_, mode_, cmd);
        state_ = r.state;
        return r;
    }
    StepResult step_text(const std::string& text) {
        StepResult r = n905::step_text(state_, *spec_, mode_, text);
        state_ = r.state;
        return r;
    }
    std::string look() const { return render(state_, *spec_, mode_); }

    const WorldState& state() const { return state_; }
    const GameSpec& spec() const { return *spec_; }
    GameMode mode() const { return mode_; }

private:
    const GameSpec* spec_;
    GameMode mode_;
    WorldState state_;
};

}  // namespace n905
