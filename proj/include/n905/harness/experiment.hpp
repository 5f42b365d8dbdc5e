#pragma once

#include <optional>
#include <string>
#include <vector>

#include "n905/agent/agent.hpp"

namespace n905 {

/// One experiment: a game, a mode, a set of agent variants and seeds, and
/// the training hyperparameters. Loaded from a JSON preset.
struct ExperimentConfig {
    std::string game_spec_path;
    std::string rules_path;
    std::string hasa_path;
    std::string facts_path;
    std::string corpus_path;
    GameMode mode = GameMode::Full;
    std::vector<AgentVariant> variants;
    std::vector<std::uint64_t> seeds;
    std::string output_dir;
    TrainingConfig training;
    int ngram_order = 2;
    double ngram_alpha = 0.1;
    ShapingConfig shaping;
    int hash_bins = 64;
    bool save_policies = true;

    void validate() const;
};

/// Reads a config file; relative data paths resolve against the config's
/// directory. The N905_OUT_DIR environment variable overrides output_dir.
ExperimentConfig load_experiment_config(const std::string& path);

struct MetricsRow {
    std::string variant;
    std::uint64_t seed = 0;
    int episode = 0;
    int reward = 0;
    int steps = 0;
    std::array<int, 6> checkpoint_steps{};  // 0 = not reached
};

extern const char* kMetricsHeader;

std::string metrics_to_csv(const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> parse_metrics_csv(const std::string& content);
std::vector<MetricsRow> load_metrics_csv(const std::string& path);

/// Loaded data and derived models for one experiment; reusable across
/// variants and seeds.
struct ExperimentAssets {
    GameSpec spec;
    ExtractionRules rules;
    HasAKnowledgeBase hasa;
    FactBase facts;
    SequenceModel sequence;
    AgentContext context;  // points into the members above
};

ExperimentAssets load_assets(const ExperimentConfig& cfg);

/// Trains one (variant, seed) cell and returns its per-episode rows.
std::vector<MetricsRow> train_cell(const ExperimentAssets& assets, const ExperimentConfig& cfg,
                                   AgentVariant variant, std::uint64_t seed,
                                   PolicyParameters* final_params = nullptr);

/// Runs every (variant, seed) cell, merges rows in declared order, writes
/// metrics.csv (and trained policies) under output_dir. Returns the
/// metrics file path. Deterministic for a given config, whatever `jobs` is.
std::string run_experiment(const ExperimentConfig& cfg, int jobs = 1);

}  // namespace n905
