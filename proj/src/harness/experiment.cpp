#include "n905/harness/experiment.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "n905/util/strings.hpp"

namespace n905 {

namespace fs = std::filesystem;
using nlohmann::json;

const char* kMetricsHeader = "variant,seed,episode,reward,steps,cp1,cp2,cp3,cp4,cp5,cp6";

void ExperimentConfig::validate() const {
    training.validate();
    if (variants.empty()) throw std::invalid_argument("experiment: no variants");
    if (seeds.empty()) throw std::invalid_argument("experiment: no seeds");
    std::set<std::uint64_t> distinct(seeds.begin(), seeds.end());
    if (distinct.size() != seeds.size()) {
        throw std::invalid_argument("experiment: seeds must be distinct");
    }
    if (output_dir.empty()) throw std::invalid_argument("experiment: no output directory");
    for (const std::string* p : {&game_spec_path, &rules_path, &hasa_path, &facts_path,
                                 &corpus_path}) {
        if (!fs::exists(*p)) throw std::invalid_argument("experiment: missing data file: " + *p);
    }
    if (shaping.top_k < 1) throw std::invalid_argument("experiment: k must be >= 1");
    if (shaping.lambda < 0.0 || shaping.lambda > 1.0) {
        throw std::invalid_argument("experiment: lambda must be in [0,1]");
    }
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open experiment config: " + path);
    json j = json::parse(in, nullptr, true, /*ignore_comments=*/true);

    fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        fs::path q(p);
        return q.is_absolute() ? q.string() : (base / q).lexically_normal().string();
    };

    ExperimentConfig cfg;
    cfg.game_spec_path = resolve(j.at("game_spec").get<std::string>());
    cfg.rules_path = resolve(j.at("rules").get<std::string>());
    cfg.hasa_path = resolve(j.at("hasa").get<std::string>());
    cfg.facts_path = resolve(j.at("facts").get<std::string>());
    cfg.corpus_path = resolve(j.at("corpus").get<std::string>());
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "full") cfg.mode = GameMode::Full;
    else if (mode == "ablated") cfg.mode = GameMode::Ablated;
    else throw std::runtime_error("experiment mode must be \"full\" or \"ablated\"");
    for (const auto& v : j.at("variants")) {
        cfg.variants.push_back(variant_from_name(v.get<std::string>()));
    }
    for (const auto& s : j.at("seeds")) cfg.seeds.push_back(s.get<std::uint64_t>());
    cfg.output_dir = resolve(j.at("output_dir").get<std::string>());
    if (const char* env = std::getenv("N905_OUT_DIR"); env && *env) {
        cfg.output_dir = env;
    }
    if (j.contains("training")) {
        const json& t = j["training"];
        if (t.contains("gamma")) cfg.training.gamma = t["gamma"].get<double>();
        if (t.contains("learning_rate"))
            cfg.training.learning_rate = t["learning_rate"].get<double>();
        if (t.contains("entropy_coef"))
            cfg.training.entropy_coef = t["entropy_coef"].get<double>();
        if (t.contains("value_coef")) cfg.training.value_coef = t["value_coef"].get<double>();
        if (t.contains("step_cap")) cfg.training.step_cap = t["step_cap"].get<int>();
        if (t.contains("episodes")) cfg.training.episodes = t["episodes"].get<int>();
    }
    if (j.contains("sequence_model")) {
        const json& s = j["sequence_model"];
        if (s.contains("n")) cfg.ngram_order = s["n"].get<int>();
        if (s.contains("alpha")) cfg.ngram_alpha = s["alpha"].get<double>();
    }
    if (j.contains("shaping")) {
        const json& s = j["shaping"];
        if (s.contains("k")) cfg.shaping.top_k = s["k"].get<int>();
        if (s.contains("lambda")) cfg.shaping.lambda = s["lambda"].get<double>();
    }
    if (j.contains("hash_bins")) cfg.hash_bins = j["hash_bins"].get<int>();
    if (j.contains("save_policies")) cfg.save_policies = j["save_policies"].get<bool>();
    cfg.validate();
    return cfg;
}

std::string metrics_to_csv(const std::vector<MetricsRow>& rows) {
    std::string out = kMetricsHeader;
    out += '\n';
    for (const MetricsRow& r : rows) {
        out += r.variant;
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += std::to_string(r.episode);
        out += ',';
        out += std::to_string(r.reward);
        out += ',';
        out += std::to_string(r.steps);
        for (int cp : r.checkpoint_steps) {
            out += ',';
            if (cp > 0) out += std::to_string(cp);
        }
        out += '\n';
    }
    return out;
}

std::vector<MetricsRow> parse_metrics_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line) || trim(line) != kMetricsHeader) {
        throw std::runtime_error("metrics csv: bad or missing header");
    }
    std::vector<MetricsRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<std::string> f = split(line, ',');
        if (f.size() != 11) {
            throw std::runtime_error("metrics csv line " + std::to_string(lineno) +
                                     ": expected 11 fields");
        }
        MetricsRow r;
        r.variant = f[0];
        r.seed = std::stoull(f[1]);
        r.episode = std::stoi(f[2]);
        r.reward = std::stoi(f[3]);
        r.steps = std::stoi(f[4]);
        for (int k = 0; k < 6; ++k) {
            r.checkpoint_steps[static_cast<size_t>(k)] =
                f[static_cast<size_t>(5 + k)].empty() ? 0 : std::stoi(f[static_cast<size_t>(5 + k)]);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<MetricsRow> load_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open metrics csv: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_metrics_csv(ss.str());
}

ExperimentAssets load_assets(const ExperimentConfig& cfg) {
    ExperimentAssets a;
    a.spec = load_game(cfg.game_spec_path);
    a.rules = load_rules(cfg.rules_path);
    a.hasa = load_hasa(cfg.hasa_path);
    a.facts = load_facts(cfg.facts_path);
    a.sequence = fit_sequence_model(load_corpus(cfg.corpus_path), cfg.ngram_order,
                                    cfg.ngram_alpha);
    a.context = make_agent_context(a.spec, a.rules, a.hasa, a.facts, a.sequence, cfg.shaping,
                                   cfg.hash_bins);
    return a;
}

namespace {

std::uint64_t cell_seed(AgentVariant variant, std::uint64_t seed) {
    return fnv1a(variant_name(variant)) ^ (seed * 0x9e3779b97f4a7c15ULL + 0x51ed270bULL);
}

}  // namespace

std::vector<MetricsRow> train_cell(const ExperimentAssets& assets, const ExperimentConfig& cfg,
                                   AgentVariant variant, std::uint64_t seed,
                                   PolicyParameters* final_params) {
    const AgentContext& ctx = assets.context;
    Rng rng(cell_seed(variant, seed));
    PolicyParameters params = PolicyParameters::seeded(
        ctx.space.action_dim(), ctx.vocab.feature_dim(), cell_seed(variant, seed) ^ 0xa5a5a5a5ULL);
    Engine engine(assets.spec, cfg.mode);
    Agent agent(ctx, variant);

    std::vector<MetricsRow> rows;
    rows.reserve(static_cast<size_t>(cfg.training.episodes));
    for (int ep = 0; ep < cfg.training.episodes; ++ep) {
        try {
            Observation first = engine.reset(static_cast<std::uint64_t>(ep));
            EpisodeResult res = agent.run_episode(engine, first, params, cfg.training, rng);
            params = a2c_update(params, res.trajectory, cfg.training, ctx.space);
            MetricsRow row;
            row.variant = variant_name(variant);
            row.seed = seed;
            row.episode = ep;
            row.reward = res.total_reward;
            row.steps = res.steps;
            row.checkpoint_steps = res.checkpoint_steps;
            rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            throw std::runtime_error("training aborted at (" +
                                     std::string(variant_name(variant)) + ", seed " +
                                     std::to_string(seed) + ", episode " + std::to_string(ep) +
                                     "): " + e.what());
        }
    }
    if (final_params) *final_params = std::move(params);
    return rows;
}

std::string run_experiment(const ExperimentConfig& cfg, int jobs) {
    cfg.validate();
    ExperimentAssets assets = load_assets(cfg);
    fs::create_directories(cfg.output_dir);

    struct Cell {
        AgentVariant variant;
        std::uint64_t seed;
        std::vector<MetricsRow> rows;
        PolicyParameters params;
    };
    std::vector<Cell> cells;
    for (AgentVariant v : cfg.variants) {
        for (std::uint64_t s : cfg.seeds) cells.push_back(Cell{v, s, {}, {}});
    }

    if (jobs < 1) jobs = 1;
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            Cell& c = cells[i];
            c.rows = train_cell(assets, cfg, c.variant, c.seed, &c.params);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::future<void>> futures;
        for (int t = 0; t < jobs; ++t) futures.push_back(std::async(std::launch::async, worker));
        for (auto& f : futures) f.get();  // propagates the first cell error
    }

    // Deterministic merge in declared (variant, seed) order.
    std::vector<MetricsRow> all;
    for (Cell& c : cells) {
        all.insert(all.end(), c.rows.begin(), c.rows.end());
        if (cfg.save_policies && cfg.training.episodes > 0) {
            fs::path p = fs::path(cfg.output_dir) /
                         ("policy_" + std::string(variant_name(c.variant)) + "_" +
                          std::to_string(c.seed) + ".txt");
            save_policy(c.params, p.string());
        }
    }
    fs::path metrics_path = fs::path(cfg.output_dir) / "metrics.csv";
    std::ofstream out(metrics_path);
    if (!out) throw std::runtime_error("cannot write metrics: " + metrics_path.string());
    out << metrics_to_csv(all);
    return metrics_path.string();
}

}  // namespace n905
