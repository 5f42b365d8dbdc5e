#include "n905/engine/world.hpp"

#include <stdexcept>

#include "n905/util/strings.hpp"

namespace n905 {

namespace {

const char* kScoreLine = "[Your score has just gone up by one point.]";

bool is_article_word(const std::string& w) {
    return w == "a" || w == "an" || w == "the" || w == "some";
}

bool is_particle_word(const std::string& w) {
    return w == "on" || w == "in" || w == "at" || w == "with" || w == "to" || w == "from";
}

bool is_player_word(const std::string& w) {
    return w == "me" || w == "myself" || w == "yourself" || w == "you";
}

std::string substitute(const std::string& tmpl, const std::vector<std::string>& nouns) {
    std::string out = tmpl;
    for (size_t i = 0; i < nouns.size(); ++i) {
        std::string key = "{" + std::to_string(i) + "}";
        size_t pos;
        while ((pos = out.find(key)) != std::string::npos) {
            out.replace(pos, key.size(), nouns[i]);
        }
    }
    return out;
}

const std::string& noun_of(const GameSpec& spec, const EntityId& id) {
    static const std::string kYourself = "yourself";
    if (id == kPlayerEntity) return kYourself;
    const ObjectDef* o = spec.object(id);
    if (!o) throw std::logic_error("unknown object id: " + id);
    return o->display_noun();
}

struct EvalContext {
    const WorldState* state;
    const GameSpec* spec;
    EntityId arg;  // first command argument, for $arg substitution
};

EntityId resolve_ref(const std::string& ref, const EvalContext& ctx) {
    return ref == "$arg" ? ctx.arg : ref;
}

bool object_present(const WorldState& state, const EntityId& id) {
    auto it = state.objects.find(id);
    if (it == state.objects.end()) return false;
    return it->second.location == state.player_location || it->second.location == "player";
}

bool eval_condition(const Condition& c, const EvalContext& ctx) {
    const WorldState& s = *ctx.state;
    bool value = false;
    if (c.kind == "at") {
        value = s.player_location == resolve_ref(c.obj, ctx);
    } else {
        EntityId id = resolve_ref(c.obj, ctx);
        auto it = s.objects.find(id);
        if (it != s.objects.end()) {
            const ObjectState& os = it->second;
            if (c.kind == "worn") value = os.worn;
            else if (c.kind == "carried") value = os.location == "player" && !os.worn;
            else if (c.kind == "here") value = object_present(s, id);
            else if (c.kind == "tag") value = os.tags.count(c.tag) > 0;
        }
    }
    return c.negate ? !value : value;
}

bool eval_all(const std::vector<Condition>& conds, const EvalContext& ctx) {
    for (const auto& c : conds)
        if (!eval_condition(c, ctx)) return false;
    return true;
}

/// Applies effects; returns true if the player moved rooms.
bool apply_effects(const std::vector<Effect>& effects, WorldState& s, const EvalContext& ctx) {
    bool moved = false;
    for (const auto& e : effects) {
        if (e.kind == "move") {
            s.player_location = e.obj;
            moved = true;
        } else if (e.kind == "settag") {
            s.objects[resolve_ref(e.obj, ctx)].tags.insert(e.tag);
        } else if (e.kind == "cleartag") {
            s.objects[resolve_ref(e.obj, ctx)].tags.erase(e.tag);
        } else if (e.kind == "terminal") {
            s.terminal = true;
        }
    }
    return moved;
}

}  // namespace

std::string render_surface(const VerbDef& v, const std::vector<EntityId>& args,
                           const GameSpec& spec) {
    std::vector<std::string> nouns;
    for (const auto& a : args) {
        if (a == kPlayerEntity) {
            nouns.emplace_back("me");
            continue;
        }
        if (const ObjectDef* o = spec.object(a)) {
            nouns.push_back(o->display_noun());
        } else {
            // Belief-only entity (e.g. from a commonsense source): render
            // its id as prose so the command still reads naturally.
            std::string n = a;
            for (char& c : n)
                if (c == '_') c = ' ';
            nouns.push_back(std::move(n));
        }
    }
    if (!v.surface.empty()) return substitute(v.surface, nouns);
    std::string out = v.name;
    for (const auto& n : nouns) {
        out += ' ';
        out += n;
    }
    return out;
}

std::optional<ActionCommand> parse_command(const GameSpec& spec, const std::string& text) {
    std::vector<std::string> raw = word_tokens(text);
    std::vector<std::string> toks;
    for (auto& w : raw) {
        if (!is_article_word(w)) toks.push_back(std::move(w));
    }
    if (toks.empty()) return std::nullopt;

    // Longest declared verb-name prefix.
    const VerbDef* verb = nullptr;
    size_t verb_words = 0;
    for (const auto& v : spec.verbs) {
        std::vector<std::string> name = tokenize(v.name);
        if (name.size() > toks.size() || name.size() <= verb_words) continue;
        bool ok = true;
        for (size_t i = 0; i < name.size(); ++i) {
            if (toks[i] != name[i]) {
                ok = false;
                break;
            }
        }
        if (ok) {
            verb = &v;
            verb_words = name.size();
        }
    }
    if (!verb) return std::nullopt;

    // Remaining tokens: particles skipped, greedy longest noun phrases.
    std::vector<EntityId> args;
    size_t i = verb_words;
    size_t max_words = 1;
    for (const auto& [phrase, id] : spec.noun_to_object) {
        max_words = std::max(max_words, split(phrase, '_').size());
    }
    while (i < toks.size()) {
        if (is_particle_word(toks[i])) {
            ++i;
            continue;
        }
        if (is_player_word(toks[i])) {
            args.push_back(kPlayerEntity);
            ++i;
            continue;
        }
        bool matched = false;
        for (size_t len = std::min(max_words, toks.size() - i); len >= 1; --len) {
            std::vector<std::string> words(toks.begin() + static_cast<long>(i),
                                           toks.begin() + static_cast<long>(i + len));
            auto it = spec.noun_to_object.find(join(words, "_"));
            if (it != spec.noun_to_object.end()) {
                args.push_back(it->second);
                i += len;
                matched = true;
                break;
            }
        }
        if (!matched) return std::nullopt;
    }
    if (static_cast<int>(args.size()) != verb->arity) return std::nullopt;
    for (size_t j = 0; j < args.size(); ++j) {
        if (verb->kind == VerbKind::Examine && args[j] == kPlayerEntity) continue;
        if (!entity_matches_class(spec, verb->classes[j], args[j])) return std::nullopt;
    }

    ActionCommand cmd;
    cmd.verb = verb->name;
    cmd.args = std::move(args);
    cmd.surface = render_surface(*verb, cmd.args, spec);
    return cmd;
}

std::pair<WorldState, Observation> reset(const GameSpec& spec, GameMode mode,
                                         std::uint64_t seed) {
    WorldState s;
    s.player_location = spec.start_room;
    s.seed = seed;
    for (const auto& o : spec.objects) {
        ObjectState os;
        os.location = o.initial_location;
        os.worn = o.initially_worn;
        os.support = o.initial_support;
        os.tags = o.initial_tags;
        s.objects[o.id] = std::move(os);
    }
    Observation obs;
    obs.text = render(s, spec, mode);
    obs.location_id = s.player_location;
    return {std::move(s), std::move(obs)};
}

std::string render(const WorldState& state, const GameSpec& spec, GameMode mode) {
    const RoomDef* room = spec.room(state.player_location);
    if (!room) throw std::logic_error("player in undeclared room: " + state.player_location);
    const bool scrub = mode == GameMode::Ablated && room->id == spec.ablate_room;

    std::vector<std::string> lines;
    lines.push_back(room->description);

    auto obj_state = [&](const EntityId& id) -> const ObjectState& {
        return state.objects.at(id);
    };
    auto in_room = [&](const ObjectDef& o) { return obj_state(o.id).location == room->id; };
    auto ablated = [&](const EntityId& id) { return scrub && spec.ablate_objects.count(id) > 0; };

    // Authored mention lines for unmoved objects.
    for (const auto& o : spec.objects) {
        if (o.mention.empty() || !in_room(o) || ablated(o.id)) continue;
        const ObjectState& os = obj_state(o.id);
        if (os.moved || os.worn || !os.support.empty()) continue;
        lines.push_back(o.mention);
    }

    if (!room->exits_sentence.empty()) lines.push_back(room->exits_sentence);

    // Listing lines, one per surface holding items. Items stacked on an
    // ablated surface fall back to their loose lines.
    std::vector<const ObjectDef*> displaced;
    for (const auto& surf : spec.objects) {
        if (!surf.has_prop("surface") || !in_room(surf)) continue;
        std::vector<const ObjectDef*> items;
        for (const auto& o : spec.objects) {
            if (in_room(o) && obj_state(o.id).support == surf.id && !ablated(o.id)) {
                items.push_back(&o);
            }
        }
        if (items.empty()) continue;
        if (ablated(surf.id)) {
            for (const auto* o : items) displaced.push_back(o);
            continue;
        }
        std::string line = "On the " + surf.display_noun() + (items.size() == 1 ? " is " : " are ");
        for (size_t i = 0; i < items.size(); ++i) {
            if (i > 0) line += (i + 1 == items.size()) ? " and " : ", ";
            line += items[i]->article + " " + items[i]->display_noun();
        }
        line += ".";
        lines.push_back(line);
    }

    // Loose lines: moved objects resting on the floor.
    for (const auto& o : spec.objects) {
        if (!in_room(o) || ablated(o.id)) continue;
        const ObjectState& os = obj_state(o.id);
        bool is_displaced = false;
        for (const auto* d : displaced) is_displaced |= d == &o;
        if (!is_displaced && (!os.moved || !os.support.empty())) continue;
        if (!o.loose_line.empty()) {
            lines.push_back(o.loose_line);
        } else {
            std::string a = o.article;
            if (!a.empty()) a[0] = static_cast<char>(std::toupper(a[0]));
            lines.push_back(a + " " + o.display_noun() + " lies here.");
        }
    }

    // Conditional state lines (e.g. a ringing phone).
    for (const auto& o : spec.objects) {
        if (o.tag_line_tag.empty() || !in_room(o) || ablated(o.id)) continue;
        if (obj_state(o.id).tags.count(o.tag_line_tag)) lines.push_back(o.tag_line_text);
    }

    return join(lines, " ");
}

namespace {

struct Outcome {
    std::string text;
    bool applied = false;
    bool moved = false;
};

Outcome run_builtin(const VerbDef& verb, const std::vector<EntityId>& args, WorldState& s,
                    const GameSpec& spec, const EvalContext& ctx) {
    Outcome r;
    auto ok = [&](std::string text) {
        r.applied = true;
        r.text = std::move(text);
    };
    auto refuse = [&](std::string text) { r.text = std::move(text); };

    switch (verb.kind) {
        case VerbKind::Move: {
            const RoomDef* room = spec.room(s.player_location);
            const std::string* dest = nullptr;
            for (const auto& [dir, d] : room->exits) {
                if (dir == verb.move_dir) dest = &d;
            }
            if (!dest) {
                refuse("You can't go that way.");
                return r;
            }
            s.player_location = *dest;
            r.applied = true;
            r.moved = true;
            return r;
        }
        case VerbKind::Look:
            ok("");
            r.moved = true;  // reuse the render-append path
            return r;
        case VerbKind::Wait:
            ok(verb.ok_text.empty() ? "Time passes." : verb.ok_text);
            return r;
        default:
            break;
    }

    // Remaining builtins take at least one object argument.
    const EntityId& id = args.at(0);
    if (id == kPlayerEntity) {
        if (verb.kind == VerbKind::Examine) {
            ok(spec.examine_player_text.empty() ? "As presentable as you are going to get."
                                                : spec.examine_player_text);
            return r;
        }
        refuse("Best leave yourself out of this.");
        return r;
    }
    const ObjectDef& def = *spec.object(id);
    ObjectState& os = s.objects.at(id);
    const std::string& noun = def.display_noun();
    const bool present = object_present(s, id);
    const bool carried = os.location == "player" && !os.worn;

    // Layered guards: extra preconditions for this verb/object pair.
    const GuardDef* guard = spec.guard(verb.name, id);

    switch (verb.kind) {
        case VerbKind::Take:
            if (os.worn) return refuse("You're already wearing the " + noun + "."), r;
            if (carried) return refuse("You already have the " + noun + "."), r;
            if (!present) return refuse("You don't see that here."), r;
            if (!def.has_prop("portable")) return refuse("That stays where it is."), r;
            if (guard && !eval_all(guard->when, ctx)) return refuse(guard->fail_text), r;
            os.location = "player";
            os.support.clear();
            os.moved = true;
            ok(guard && !guard->ok_text.empty() ? guard->ok_text
                                                : "You pick up the " + noun + ".");
            return r;
        case VerbKind::Drop:
            if (!carried) return refuse("You're not carrying that."), r;
            if (guard && !eval_all(guard->when, ctx)) return refuse(guard->fail_text), r;
            os.location = s.player_location;
            os.support.clear();
            os.moved = true;
            ok(guard && !guard->ok_text.empty() ? guard->ok_text
                                                : "You drop the " + noun + ".");
            return r;
        case VerbKind::Wear:
            if (os.worn) return refuse("You're already wearing the " + noun + "."), r;
            if (!def.has_prop("wearable")) return refuse("You can't wear that."), r;
            if (!carried) return refuse("You need to be holding the " + noun + " first."), r;
            if (guard && !eval_all(guard->when, ctx)) return refuse(guard->fail_text), r;
            os.worn = true;
            ok(guard && !guard->ok_text.empty() ? guard->ok_text
                                                : "You put on the " + noun + ".");
            return r;
        case VerbKind::Remove:
            if (!os.worn) return refuse("You're not wearing that."), r;
            if (guard && !eval_all(guard->when, ctx)) return refuse(guard->fail_text), r;
            os.worn = false;
            os.moved = true;
            ok(guard && !guard->ok_text.empty() ? guard->ok_text
                                                : "You take off the " + noun + ".");
            return r;
        case VerbKind::Open:
            if (!present) return refuse("You don't see that here."), r;
            if (!def.has_prop("openable")) return refuse("That doesn't open."), r;
            if (os.tags.count("open")) return refuse("It's already open."), r;
            if (guard && !eval_all(guard->when, ctx)) return refuse(guard->fail_text), r;
            os.tags.insert("open");
            ok(!def.open_text.empty() ? def.open_text : "You open the " + noun + ".");
            return r;
        case VerbKind::Close:
            if (!present) return refuse("You don't see that here."), r;
            if (!def.has_prop("openable")) return refuse("That doesn't close."), r;
            if (!os.tags.count("open")) return refuse("It's already closed."), r;
            os.tags.erase("open");
            ok("You close the " + noun + ".");
            return r;
        case VerbKind::TurnOn:
            if (!present) return refuse("You don't see that here."), r;
            if (!def.has_prop("switchable")) return refuse("That doesn't switch on."), r;
            if (os.tags.count("on")) return refuse("It's already on."), r;
            os.tags.insert("on");
            ok("You turn on the " + noun + ".");
            return r;
        case VerbKind::TurnOff:
            if (!present) return refuse("You don't see that here."), r;
            if (!def.has_prop("switchable")) return refuse("That doesn't switch off."), r;
            if (!os.tags.count("on")) return refuse("It's already off."), r;
            os.tags.erase("on");
            ok("You turn off the " + noun + ".");
            return r;
        case VerbKind::Examine:
            if (!present && !carried && !os.worn) return refuse("You don't see that here."), r;
            if (!def.examine_text.empty()) ok(def.examine_text);
            else if (!def.mention.empty()) ok(def.mention);
            else ok("You see nothing special about the " + noun + ".");
            return r;
        case VerbKind::Read:
            if (!present && !carried) return refuse("You don't see that here."), r;
            if (!def.has_prop("readable")) return refuse("Nothing is written on it."), r;
            ok(!def.read_text.empty() ? def.read_text : "Nothing worth reading.");
            return r;
        case VerbKind::PutOn: {
            const EntityId& surf_id = args.at(1);
            if (surf_id == kPlayerEntity) return refuse("Best leave yourself out of this."), r;
            const ObjectDef& surf = *spec.object(surf_id);
            if (!carried) return refuse("You need to be holding the " + noun + " first."), r;
            if (!object_present(s, surf_id)) return refuse("You don't see that here."), r;
            if (!surf.has_prop("surface"))
                return refuse("You can't put things on the " + surf.display_noun() + "."), r;
            os.location = s.player_location;
            os.support = surf_id;
            os.moved = true;
            ok("You put the " + noun + " on the " + surf.display_noun() + ".");
            return r;
        }
        default:
            break;
    }
    refuse("You can't do that.");
    return r;
}

int fire_checkpoint(const WorldState& prev, const WorldState& next, const GameSpec& spec) {
    for (const auto& cp : spec.checkpoints) {
        unsigned prefix = (1u << (cp.ordinal - 1)) - 1u;
        if (prev.checkpoint_mask != prefix) continue;
        bool hit = false;
        if (cp.trigger_kind == "enters") {
            hit = prev.player_location != cp.trigger_arg &&
                  next.player_location == cp.trigger_arg;
        } else if (cp.trigger_kind == "removes") {
            hit = prev.objects.at(cp.trigger_arg).worn && !next.objects.at(cp.trigger_arg).worn;
        } else if (cp.trigger_kind == "drops") {
            const ObjectState& a = prev.objects.at(cp.trigger_arg);
            const ObjectState& b = next.objects.at(cp.trigger_arg);
            hit = a.location == "player" && !a.worn && b.location != "player";
        } else if (cp.trigger_kind == "tagset") {
            hit = !prev.objects.at(cp.trigger_arg).tags.count(cp.trigger_tag) &&
                  next.objects.at(cp.trigger_arg).tags.count(cp.trigger_tag);
        }
        if (hit) return cp.ordinal;
    }
    return 0;
}

}  // namespace

StepResult step(const WorldState& state, const GameSpec& spec, GameMode mode,
                const ActionCommand& command) {
    if (state.terminal) {
        throw std::logic_error("step() called on a terminal state");
    }
    const VerbDef* verb = spec.verb(command.verb);
    if (!verb || static_cast<int>(command.args.size()) != verb->arity) {
        throw std::logic_error("step() called with undeclared command: " + command.surface);
    }

    StepResult result;
    result.state = state;
    WorldState& s = result.state;

    // Arguments the engine has no object for are belief errors on the
    // agent's side, never engine errors: the command fizzles.
    for (const auto& a : command.args) {
        bool known = a == kPlayerEntity || spec.object(a) != nullptr;
        if (!known) {
            s.step_count = state.step_count + 1;
            result.obs.text = "You see no such thing here.";
            result.obs.location_id = s.player_location;
            return result;
        }
    }

    EvalContext ctx{&s, &spec, command.args.empty() ? EntityId{} : command.args[0]};
    Outcome out;
    if (verb->kind == VerbKind::Custom) {
        bool ok = true;
        for (const auto& a : command.args) {
            if (a == kPlayerEntity || !spec.object(a)) ok = false;
        }
        if (ok) ok = eval_all(verb->when, ctx);
        if (ok) {
            const GuardDef* guard = spec.guard(verb->name, ctx.arg);
            if (guard && !eval_all(guard->when, ctx)) {
                out.text = guard->fail_text;
            } else {
                out.moved = apply_effects(verb->effects, s, ctx);
                out.applied = true;
                out.text = (guard && !guard->ok_text.empty()) ? guard->ok_text : verb->ok_text;
            }
        } else {
            out.text = verb->fail_text.empty() ? "You can't do that right now." : verb->fail_text;
        }
    } else {
        out = run_builtin(*verb, command.args, s, spec, ctx);
    }

    s.step_count = state.step_count + 1;

    Observation& obs = result.obs;
    obs.location_id = s.player_location;
    obs.text = out.text;
    if (out.moved) {
        std::string scene = render(s, spec, mode);
        obs.text = obs.text.empty() ? scene : obs.text + " " + scene;
    }

    if (out.applied) {
        int fired = fire_checkpoint(state, s, spec);
        if (fired > 0) {
            s.checkpoint_mask |= 1u << (fired - 1);
            obs.reward += 1;
            result.checkpoint_fired = fired;
            obs.text += " ";
            obs.text += kScoreLine;
        }
    }
    if (s.terminal) {
        obs.reward += 1;  // the game's native end-of-game score
        obs.text += " ";
        obs.text += kScoreLine;
        if (!spec.ending_text.empty()) {
            obs.text += " ";
            obs.text += spec.ending_text;
        }
    }
    obs.done = s.terminal;
    result.applied = out.applied;
    if (obs.text.empty()) obs.text = "Nothing happens.";
    return result;
}

StepResult step_text(const WorldState& state, const GameSpec& spec, GameMode mode,
                     const std::string& text) {
    std::optional<ActionCommand> cmd = parse_command(spec, text);
    if (!cmd) {
        StepResult r;
        r.state = state;
        r.state.step_count = state.step_count + 1;
        r.obs.text = "That's not something you can do here.";
        r.obs.location_id = state.player_location;
        return r;
    }
    return step(state, spec, mode, *cmd);
}

WalkthroughResult run_walkthrough(const GameSpec& spec, GameMode mode) {
    auto [state, obs] = reset(spec, mode, 0);
    WalkthroughResult result;
    for (size_t i = 0; i < spec.walkthrough.size(); ++i) {
        const std::string& cmd = spec.walkthrough[i];
        StepResult r = step_text(state, spec, mode, cmd);
        if (!r.applied) {
            throw std::runtime_error("walkthrough command " + std::to_string(i + 1) + " \"" +
                                     cmd + "\" failed: " + r.obs.text);
        }
        state = std::move(r.state);
        result.total_reward += r.obs.reward;
        result.steps += 1;
    }
    if (!state.terminal) {
        throw std::runtime_error("walkthrough did not reach the terminal state");
    }
    return result;
}

}  // namespace n905
