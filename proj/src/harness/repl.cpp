#include "n905/harness/repl.hpp"

#include "n905/util/strings.hpp"

namespace n905 {

int repl(std::istream& in, std::ostream& out, const ReplOptions& opts) {
    GameSpec spec = load_game(opts.game_spec_path);
    ExtractionRules rules = load_rules(opts.rules_path);
    HasAKnowledgeBase hasa;
    FactBase facts;
    if (!opts.hasa_path.empty()) hasa = load_hasa(opts.hasa_path);
    if (!opts.facts_path.empty()) facts = load_facts(opts.facts_path);
    QuestionSet questions = default_questions();

    Engine engine(spec, opts.mode);
    Observation obs = engine.reset(0);
    KnowledgeGraph kg;
    int total_reward = 0;

    auto absorb_observation = [&](const Observation& o) {
        kg.absorb(extract(o.text, o.location_id, rules));
    };
    absorb_observation(obs);

    out << spec.title << "\n\n" << obs.text << "\n";
    std::string line;
    while (out << "\n> " << std::flush, std::getline(in, line)) {
        std::string cmd = trim(line);
        if (cmd.empty()) continue;
        if (cmd == "quit" || cmd == "q") {
            out << "Fine. The presentation can wait.\n";
            break;
        }
        if (cmd == "debug kg") {
            KnowledgeGraph view = kg;
            view.absorb(infer_hasa(hasa, engine.state().player_location));
            view.absorb(qa_infer(facts, questions, engine.state().player_location, kg));
            out << view.dump();
            continue;
        }
        if (engine.state().terminal) {
            out << "The game is over. (score " << total_reward << ")\n";
            continue;
        }
        StepResult r = engine.step_text(cmd);
        total_reward += r.obs.reward;
        absorb_observation(r.obs);
        out << r.obs.text << "\n[score " << total_reward << ", steps "
            << engine.state().step_count << "]\n";
        if (r.obs.done) out << "The game has ended.\n";
    }
    return total_reward;
}

}  // namespace n905
