#include "n905/harness/aggregate.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace n905 {

std::vector<SummaryRow> aggregate(const std::vector<MetricsRow>& rows, int window) {
    if (window < 1) throw std::invalid_argument("aggregate: window must be >= 1");

    // variant -> seed -> rewards by episode index.
    std::map<std::string, std::map<std::uint64_t, std::vector<double>>> by_cell;
    std::vector<std::string> variant_order;
    for (const MetricsRow& r : rows) {
        if (!by_cell.count(r.variant)) variant_order.push_back(r.variant);
        auto& per_seed = by_cell[r.variant][r.seed];
        if (r.episode != static_cast<int>(per_seed.size())) {
            throw std::runtime_error("aggregate: mixed runs in one file: " + r.variant +
                                     " seed " + std::to_string(r.seed) +
                                     " has a gap or duplicate at episode " +
                                     std::to_string(r.episode));
        }
        per_seed.push_back(r.reward);
    }

    // All cells must cover the same episode range.
    size_t episodes = 0;
    bool first = true;
    for (const auto& [variant, seeds] : by_cell) {
        for (const auto& [seed, rewards] : seeds) {
            if (first) {
                episodes = rewards.size();
                first = false;
            } else if (rewards.size() != episodes) {
                throw std::runtime_error("aggregate: mixed runs in one file: " + variant +
                                         " seed " + std::to_string(seed) + " has " +
                                         std::to_string(rewards.size()) + " episodes, expected " +
                                         std::to_string(episodes));
            }
        }
    }

    std::vector<SummaryRow> out;
    for (const std::string& variant : variant_order) {
        const auto& seeds = by_cell[variant];
        // Trailing-window smoothing per seed via prefix sums.
        std::map<std::uint64_t, std::vector<double>> smoothed;
        for (const auto& [seed, rewards] : seeds) {
            std::vector<double>& sm = smoothed[seed];
            sm.resize(rewards.size());
            double acc = 0.0;
            for (size_t e = 0; e < rewards.size(); ++e) {
                acc += rewards[e];
                if (e >= static_cast<size_t>(window)) acc -= rewards[e - static_cast<size_t>(window)];
                size_t denom = std::min(e + 1, static_cast<size_t>(window));
                sm[e] = acc / static_cast<double>(denom);
            }
        }
        for (size_t e = 0; e < episodes; ++e) {
            SummaryRow row;
            row.variant = variant;
            row.episode = static_cast<int>(e);
            double sum = 0.0;
            double best = 0.0;
            bool any = false;
            for (const auto& [seed, sm] : smoothed) {
                sum += sm[e];
                best = any ? std::max(best, sm[e]) : sm[e];
                any = true;
            }
            row.mean_reward = sum / static_cast<double>(smoothed.size());
            row.max_reward = best;
            out.push_back(std::move(row));
        }
    }
    return out;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "variant,episode,mean_reward,max_reward\n";
    char buf[64];
    for (const SummaryRow& r : rows) {
        out += r.variant;
        out += ',';
        out += std::to_string(r.episode);
        std::snprintf(buf, sizeof buf, ",%.6f,%.6f\n", r.mean_reward, r.max_reward);
        out += buf;
    }
    return out;
}

}  // namespace n905
