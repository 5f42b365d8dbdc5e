#include "n905/engine/game_spec.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "n905/util/strings.hpp"

namespace n905 {

namespace {

const std::set<std::string> kCheckpointNames = {
    "enter-bedroom", "enter-bathroom", "remove-watch",
    "remove-soiled-clothes", "drop-clothes", "enter-shower"};

[[noreturn]] void fail(const std::string& origin, int lineno, const std::string& msg) {
    throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": " + msg);
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> f = split(line, '|');
    for (auto& s : f) s = trim(s);
    return f;
}

std::vector<std::string> semi_list(const std::string& s) {
    std::vector<std::string> out;
    if (trim(s) == "-" || trim(s).empty()) return out;
    for (auto& piece : split(s, ';')) {
        std::string t = trim(piece);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

std::vector<Condition> parse_conditions(const std::string& s, const std::string& origin,
                                        int lineno) {
    std::vector<Condition> out;
    for (const std::string& atom : semi_list(s)) {
        Condition c;
        std::string a = atom;
        if (a[0] == '!') {
            c.negate = true;
            a = trim(a.substr(1));
        }
        std::vector<std::string> w = tokenize(a);
        if (w.size() < 2) fail(origin, lineno, "bad condition atom: " + atom);
        c.kind = w[0];
        c.obj = w[1];
        if (c.kind == "tag") {
            if (w.size() != 3) fail(origin, lineno, "tag condition needs object and tag: " + atom);
            c.tag = w[2];
        } else if (c.kind != "at" && c.kind != "worn" && c.kind != "carried" &&
                   c.kind != "here") {
            fail(origin, lineno, "unknown condition kind: " + c.kind);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Effect> parse_effects(const std::string& s, const std::string& origin, int lineno) {
    std::vector<Effect> out;
    for (const std::string& atom : semi_list(s)) {
        std::vector<std::string> w = tokenize(atom);
        Effect e;
        e.kind = w[0];
        if (e.kind == "terminal") {
        } else if (e.kind == "move") {
            if (w.size() != 2) fail(origin, lineno, "move effect needs a room: " + atom);
            e.obj = w[1];
        } else if (e.kind == "settag" || e.kind == "cleartag") {
            if (w.size() != 3) fail(origin, lineno, "tag effect needs object and tag: " + atom);
            e.obj = w[1];
            e.tag = w[2];
        } else {
            fail(origin, lineno, "unknown effect kind: " + e.kind);
        }
        out.push_back(std::move(e));
    }
    return out;
}

VerbKind verb_kind_from(const std::string& word, const std::string& origin, int lineno) {
    if (word == "move") return VerbKind::Move;
    if (word == "look") return VerbKind::Look;
    if (word == "wait") return VerbKind::Wait;
    if (word == "take") return VerbKind::Take;
    if (word == "drop") return VerbKind::Drop;
    if (word == "wear") return VerbKind::Wear;
    if (word == "remove") return VerbKind::Remove;
    if (word == "open") return VerbKind::Open;
    if (word == "close") return VerbKind::Close;
    if (word == "turnon") return VerbKind::TurnOn;
    if (word == "turnoff") return VerbKind::TurnOff;
    if (word == "examine") return VerbKind::Examine;
    if (word == "puton") return VerbKind::PutOn;
    if (word == "read") return VerbKind::Read;
    if (word == "custom") return VerbKind::Custom;
    fail(origin, lineno, "unknown verb kind: " + word);
}

}  // namespace

const RoomDef* GameSpec::room(const std::string& id) const {
    for (const auto& r : rooms)
        if (r.id == id) return &r;
    return nullptr;
}

const ObjectDef* GameSpec::object(const EntityId& id) const {
    for (const auto& o : objects)
        if (o.id == id) return &o;
    return nullptr;
}

const VerbDef* GameSpec::verb(const std::string& name) const {
    for (const auto& v : verbs)
        if (v.name == name) return &v;
    return nullptr;
}

const GuardDef* GameSpec::guard(const std::string& verb, const EntityId& object) const {
    for (const auto& g : guards)
        if (g.verb == verb && g.object == object) return &g;
    return nullptr;
}

std::vector<std::string> GameSpec::all_noun_phrases() const {
    std::vector<std::string> out;
    for (const auto& o : objects)
        for (const auto& n : o.nouns) out.push_back(n);
    return out;
}

std::vector<EntityId> GameSpec::all_entities() const {
    std::vector<EntityId> out;
    for (const auto& o : objects) out.push_back(o.id);
    for (const auto& r : rooms) out.push_back(r.id);
    out.push_back(kPlayerEntity);
    return out;
}

std::vector<EntityId> GameSpec::objects_with_prop(const std::string& prop) const {
    std::vector<EntityId> out;
    for (const auto& o : objects)
        if (o.has_prop(prop)) out.push_back(o.id);
    return out;
}

GameSpec parse_game(const std::string& content, const std::string& origin) {
    GameSpec spec;
    std::istringstream in(content);
    std::string line;
    std::string section;
    int lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = t.substr(1, t.size() - 2);
            continue;
        }

        if (section == "meta") {
            auto eq = t.find('=');
            if (eq == std::string::npos) fail(origin, lineno, "meta line needs key = value");
            std::string key = trim(t.substr(0, eq));
            std::string value = trim(t.substr(eq + 1));
            if (key == "title") spec.title = value;
            else if (key == "start") spec.start_room = value;
            else if (key == "ending") spec.ending_text = value;
            else if (key == "examine_player") spec.examine_player_text = value;
            else if (key == "ablate") {
                auto colon = value.find(':');
                if (colon == std::string::npos) fail(origin, lineno, "ablate needs room: objects");
                spec.ablate_room = trim(value.substr(0, colon));
                for (auto& o : split(value.substr(colon + 1), ','))
                    spec.ablate_objects.insert(trim(o));
            } else {
                fail(origin, lineno, "unknown meta key: " + key);
            }
        } else if (section == "rooms") {
            std::vector<std::string> f = fields_of(t);
            if (f.size() != 5) fail(origin, lineno, "room record needs 5 fields");
            RoomDef r;
            r.id = f[0];
            r.name = f[1];
            for (const std::string& e : semi_list(f[2])) {
                auto eq = e.find('=');
                if (eq == std::string::npos) fail(origin, lineno, "exit needs dir=room: " + e);
                r.exits.emplace_back(trim(e.substr(0, eq)), trim(e.substr(eq + 1)));
            }
            r.description = f[3];
            if (f[4] != "-") r.exits_sentence = f[4];
            spec.rooms.push_back(std::move(r));
        } else if (section == "objects") {
            std::vector<std::string> f = fields_of(t);
            if (f.size() < 7) fail(origin, lineno, "object record needs at least 7 fields");
            ObjectDef o;
            o.id = f[0];
            o.nouns = semi_list(f[1]);
            if (o.nouns.empty()) fail(origin, lineno, "object " + o.id + " declares no nouns");
            o.article = f[2];
            std::vector<std::string> loc = split(f[3], ':');
            for (auto& piece : loc) piece = trim(piece);
            o.initial_location = loc[0];
            if (loc.size() == 2 && loc[1] == "worn") o.initially_worn = true;
            else if (loc.size() == 3 && loc[1] == "on") o.initial_support = loc[2];
            else if (loc.size() != 1) fail(origin, lineno, "bad location spec: " + f[3]);
            for (const std::string& p : semi_list(f[4])) o.props.insert(p);
            if (f[5] != "-") o.mention = f[5];
            if (f[6] != "-") o.loose_line = f[6];
            for (size_t i = 7; i < f.size(); ++i) {
                auto eq = f[i].find('=');
                if (eq == std::string::npos) fail(origin, lineno, "object extra needs key=value");
                std::string key = trim(f[i].substr(0, eq));
                std::string value = trim(f[i].substr(eq + 1));
                if (key == "examine") o.examine_text = value;
                else if (key == "read") o.read_text = value;
                else if (key == "open") o.open_text = value;
                else if (key == "tag") o.initial_tags.insert(value);
                else if (key == "when_tag") {
                    auto colon = value.find(':');
                    if (colon == std::string::npos)
                        fail(origin, lineno, "when_tag needs tag: line");
                    o.tag_line_tag = trim(value.substr(0, colon));
                    o.tag_line_text = trim(value.substr(colon + 1));
                } else {
                    fail(origin, lineno, "unknown object extra key: " + key);
                }
            }
            spec.objects.push_back(std::move(o));
        } else if (section == "verbs") {
            std::vector<std::string> f = fields_of(t);
            std::vector<std::string> head = tokenize(f[0]);
            if (head.empty()) fail(origin, lineno, "empty verb record");
            if (head[0] == "verb") {
                if (f.size() < 4) fail(origin, lineno, "verb record needs 4+ fields");
                VerbDef v;
                v.name = join(std::vector<std::string>(head.begin() + 1, head.end()), " ");
                v.arity = std::stoi(f[1]);
                v.classes = semi_list(f[2]);
                if (static_cast<int>(v.classes.size()) != v.arity)
                    fail(origin, lineno, "verb " + v.name + ": classes must match arity");
                std::vector<std::string> kind = tokenize(f[3]);
                v.kind = verb_kind_from(kind[0], origin, lineno);
                if (v.kind == VerbKind::Move) {
                    if (kind.size() != 2) fail(origin, lineno, "move kind needs a direction");
                    v.move_dir = kind[1];
                }
                for (size_t i = 4; i < f.size(); ++i) {
                    auto eq = f[i].find('=');
                    if (eq == std::string::npos) fail(origin, lineno, "verb extra needs key=value");
                    std::string key = trim(f[i].substr(0, eq));
                    std::string value = trim(f[i].substr(eq + 1));
                    if (key == "when") v.when = parse_conditions(value, origin, lineno);
                    else if (key == "do") v.effects = parse_effects(value, origin, lineno);
                    else if (key == "ok") v.ok_text = value;
                    else if (key == "fail") v.fail_text = value;
                    else if (key == "surface") v.surface = value;
                    else fail(origin, lineno, "unknown verb extra key: " + key);
                }
                spec.verbs.push_back(std::move(v));
            } else if (head[0] == "guard") {
                if (head.size() < 3) fail(origin, lineno, "guard record needs verb and object");
                GuardDef g;
                g.object = head.back();
                g.verb = join(std::vector<std::string>(head.begin() + 1, head.end() - 1), " ");
                for (size_t i = 1; i < f.size(); ++i) {
                    auto eq = f[i].find('=');
                    if (eq == std::string::npos)
                        fail(origin, lineno, "guard extra needs key=value");
                    std::string key = trim(f[i].substr(0, eq));
                    std::string value = trim(f[i].substr(eq + 1));
                    if (key == "when") g.when = parse_conditions(value, origin, lineno);
                    else if (key == "fail") g.fail_text = value;
                    else if (key == "ok") g.ok_text = value;
                    else fail(origin, lineno, "unknown guard extra key: " + key);
                }
                spec.guards.push_back(std::move(g));
            } else {
                fail(origin, lineno, "verbs section records start with 'verb' or 'guard'");
            }
        } else if (section == "checkpoints") {
            std::vector<std::string> f = fields_of(t);
            if (f.size() != 3) fail(origin, lineno, "checkpoint record needs 3 fields");
            CheckpointDef c;
            c.ordinal = std::stoi(f[0]);
            c.name = f[1];
            std::vector<std::string> trig = tokenize(f[2]);
            if (trig.size() < 2) fail(origin, lineno, "bad checkpoint trigger: " + f[2]);
            c.trigger_kind = trig[0];
            c.trigger_arg = trig[1];
            if (c.trigger_kind == "tagset") {
                if (trig.size() != 3) fail(origin, lineno, "tagset trigger needs object and tag");
                c.trigger_tag = trig[2];
            } else if (c.trigger_kind != "enters" && c.trigger_kind != "removes" &&
                       c.trigger_kind != "drops") {
                fail(origin, lineno, "unknown trigger kind: " + c.trigger_kind);
            }
            spec.checkpoints.push_back(std::move(c));
        } else if (section == "walkthrough") {
            spec.walkthrough.push_back(t);
        } else if (section == "distractors") {
            std::vector<std::string> f = fields_of(t);
            if (f.size() != 2) fail(origin, lineno, "distractor record needs verb | noun");
            spec.distractors.emplace_back(f[0], f[1]);
        } else {
            fail(origin, lineno, "content outside any known section");
        }
    }

    // Noun map and derived distractor verbs.
    for (const auto& o : spec.objects) {
        for (const auto& n : o.nouns) {
            EntityId key = canonicalize(n);
            auto it = spec.noun_to_object.find(key);
            if (it != spec.noun_to_object.end() && it->second != o.id) {
                throw std::runtime_error(origin + ": noun \"" + n + "\" maps to both " +
                                         it->second + " and " + o.id);
            }
            spec.noun_to_object[key] = o.id;
        }
    }
    for (const auto& [dverb, dnoun] : spec.distractors) {
        auto it = spec.noun_to_object.find(canonicalize(dnoun));
        if (it == spec.noun_to_object.end()) {
            throw std::runtime_error(origin + ": distractor references unknown noun \"" +
                                     dnoun + "\"");
        }
        if (!spec.verb(dverb)) {
            VerbDef v;
            v.name = dverb;
            v.arity = 1;
            v.classes = {"distractor:" + it->second};
            v.kind = VerbKind::Custom;
            v.when.push_back(Condition{"here", "$arg", "", false});
            v.ok_text = "You fuss with it for a moment. Nothing comes of it.";
            v.fail_text = "You see no way to do that here.";
            v.from_distractor = true;
            spec.verbs.push_back(std::move(v));
        }
    }

    // Validation.
    auto require = [&](bool cond, const std::string& msg) {
        if (!cond) throw std::runtime_error(origin + ": " + msg);
    };
    require(!spec.rooms.empty(), "no rooms declared");
    require(spec.room(spec.start_room) != nullptr,
            "start room not declared: " + spec.start_room);
    for (const auto& r : spec.rooms) {
        for (const auto& [dir, dest] : r.exits) {
            require(spec.room(dest) != nullptr,
                    "room " + r.id + " has exit " + dir + " to undeclared room \"" + dest + "\"");
        }
    }
    for (const auto& o : spec.objects) {
        require(o.initial_location == "player" || spec.room(o.initial_location) != nullptr,
                "object " + o.id + " starts in undeclared location \"" + o.initial_location +
                    "\"");
        if (!o.initial_support.empty()) {
            require(spec.object(o.initial_support) != nullptr,
                    "object " + o.id + " sits on undeclared object \"" + o.initial_support +
                        "\"");
        }
    }
    require(spec.walkthrough.size() >= 25 && spec.walkthrough.size() <= 30,
            "walkthrough length " + std::to_string(spec.walkthrough.size()) +
                " outside [25,30]");
    require(spec.checkpoints.size() == 6, "expected exactly 6 checkpoints, got " +
                                              std::to_string(spec.checkpoints.size()));
    std::vector<CheckpointDef> sorted = spec.checkpoints;
    std::sort(sorted.begin(), sorted.end(),
              [](const CheckpointDef& a, const CheckpointDef& b) { return a.ordinal < b.ordinal; });
    for (int i = 0; i < 6; ++i) {
        require(sorted[i].ordinal == i + 1,
                "checkpoint ordinals must be exactly 1..6 with no gaps");
        require(kCheckpointNames.count(sorted[i].name) > 0,
                "unknown checkpoint name: " + sorted[i].name);
    }
    spec.checkpoints = std::move(sorted);
    for (const auto& g : spec.guards) {
        require(spec.verb(g.verb) != nullptr, "guard for undeclared verb: " + g.verb);
        require(spec.object(g.object) != nullptr, "guard for undeclared object: " + g.object);
    }
    return spec;
}

GameSpec load_game(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open game spec: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_game(ss.str(), path);
}

bool entity_matches_class(const GameSpec& spec, const std::string& cls, const EntityId& id) {
    if (cls == "any") return true;
    if (starts_with(cls, "distractor:")) return cls.substr(11) == id;
    const ObjectDef* o = spec.object(id);
    return o && o->has_prop(cls);
}

}  // namespace n905
