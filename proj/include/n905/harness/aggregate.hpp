#pragma once

#include <string>
#include <vector>

#include "n905/harness/experiment.hpp"

namespace n905 {

struct SummaryRow {
    std::string variant;
    int episode = 0;
    double mean_reward = 0.0;  // trailing-window smoothed, averaged across seeds
    double max_reward = 0.0;   // max across seeds of the smoothed reward
};

/// Figure-style aggregation: per variant and episode, the trailing
/// moving-window mean of reward averaged across seeds plus the across-seed
/// max. Throws if the file mixes incompatible runs (duplicate rows or
/// unequal episode ranges).
std::vector<SummaryRow> aggregate(const std::vector<MetricsRow>& rows, int window);

std::string summary_to_csv(const std::vector<SummaryRow>& rows);

}  // namespace n905
