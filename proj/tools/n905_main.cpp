#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "n905/harness/aggregate.hpp"
#include "n905/harness/experiment.hpp"
#include "n905/harness/repl.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"n905: knowledge-graph agent workbench for the 9:05 morning-routine game"};
    app.require_subcommand(1);

    // train
    auto* train = app.add_subcommand("train", "run an experiment preset");
    std::string config_path;
    int jobs = 1;
    train->add_option("--config", config_path, "experiment config (json)")->required();
    train->add_option("--jobs", jobs, "parallel (variant, seed) cells");

    // aggregate
    auto* agg = app.add_subcommand("aggregate", "summarize a metrics csv");
    std::string in_path, out_path;
    int window = 100;
    agg->add_option("--in", in_path, "metrics csv")->required();
    agg->add_option("--window", window, "smoothing window (episodes)");
    agg->add_option("--out", out_path, "output csv (default: stdout)");

    // play
    auto* play = app.add_subcommand("play", "interactive session");
    std::string spec_path, rules_path, hasa_path, facts_path;
    bool ablated = false;
    play->add_option("--spec", spec_path, "game spec file")->required();
    play->add_option("--rules", rules_path, "extraction rules (default: alongside the spec)");
    play->add_option("--hasa", hasa_path, "HasA knowledge base for the debug view");
    play->add_option("--facts", facts_path, "fact base for the debug view");
    play->add_flag("--ablated", ablated, "ablated observations");

    // walkthrough
    auto* walk = app.add_subcommand("walkthrough", "run the golden walkthrough");
    std::string walk_spec;
    bool walk_ablated = false;
    walk->add_option("--spec", walk_spec, "game spec file")->required();
    walk->add_flag("--ablated", walk_ablated, "ablated observations");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train) {
            n905::ExperimentConfig cfg = n905::load_experiment_config(config_path);
            std::string metrics = n905::run_experiment(cfg, jobs);
            std::cout << metrics << "\n";
        } else if (*agg) {
            auto rows = n905::load_metrics_csv(in_path);
            std::string csv = n905::summary_to_csv(n905::aggregate(rows, window));
            if (out_path.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(out_path);
                if (!out) throw std::runtime_error("cannot write " + out_path);
                out << csv;
                std::cout << out_path << "\n";
            }
        } else if (*play) {
            n905::ReplOptions opts;
            opts.game_spec_path = spec_path;
            opts.rules_path = rules_path.empty()
                                  ? (fs::path(spec_path).parent_path() / "extract.rules").string()
                                  : rules_path;
            fs::path dir = fs::path(opts.rules_path).parent_path();
            opts.hasa_path = hasa_path.empty() && fs::exists(dir / "hasa.tsv")
                                 ? (dir / "hasa.tsv").string()
                                 : hasa_path;
            opts.facts_path = facts_path.empty() && fs::exists(dir / "facts.tsv")
                                  ? (dir / "facts.tsv").string()
                                  : facts_path;
            opts.mode = ablated ? n905::GameMode::Ablated : n905::GameMode::Full;
            n905::repl(std::cin, std::cout, opts);
        } else if (*walk) {
            n905::GameSpec spec = n905::load_game(walk_spec);
            n905::GameMode mode = walk_ablated ? n905::GameMode::Ablated : n905::GameMode::Full;
            n905::WalkthroughResult r = n905::run_walkthrough(spec, mode);
            std::cout << "reward " << r.total_reward << " in " << r.steps << " steps\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
