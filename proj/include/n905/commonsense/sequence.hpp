#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "n905/engine/world.hpp"

namespace n905 {

/// Additive-smoothed n-gram model over whole-command tokens, standing in
/// for a pretrained next-sentence scorer. The vocabulary is the distinct
/// corpus tokens plus one reserved unknown token; histories are padded
/// with begin markers and sequence ends are counted against an end marker
/// that is excluded from context totals, so the conditional distribution
/// over the vocabulary sums to one exactly.
class SequenceModel {
public:
    SequenceModel() = default;

    int order() const { return n_; }
    double alpha() const { return alpha_; }
    int vocab_size() const { return static_cast<int>(vocab_.size()) + 1; }  // + unknown

    /// log Pr(candidate | last n-1 history commands).
    double score(const std::vector<std::string>& history, const std::string& candidate) const;

    /// Smoothed conditional probability of one token after a context.
    double conditional(const std::vector<std::string>& context,
                       const std::string& token) const;

    friend SequenceModel fit_sequence_model(const std::vector<std::vector<std::string>>& corpus,
                                            int n, double alpha);

private:
    std::string context_key(const std::vector<std::string>& history) const;

    int n_ = 2;
    double alpha_ = 0.1;
    std::map<std::string, int> vocab_;                      // token -> id (corpus tokens only)
    std::map<std::string, std::map<int, int>> counts_;      // context key -> token id -> count
    std::map<std::string, int> context_totals_;             // end-marker transitions excluded
};

/// Counts all n-grams of the corpus. Throws on an empty corpus, n < 1 or
/// alpha <= 0.
SequenceModel fit_sequence_model(const std::vector<std::vector<std::string>>& corpus, int n,
                                 double alpha);

/// One command per line; a blank line separates sequences; '#' comments.
std::vector<std::vector<std::string>> load_corpus(const std::string& path);
std::vector<std::vector<std::string>> parse_corpus(const std::string& content);

struct ShapingConfig {
    int top_k = 64;
    double lambda = 0.5;  // 0 = policy only, 1 = sequence scorer only
};

/// Policy-shaping rerank: keep the top-k candidates by policy probability
/// (cutoff ties broken by lexicographic surface), reweight each by
/// exp((1-lambda)*log p + lambda*score), renormalize. Entries outside the
/// top-k get probability zero. Returns probabilities aligned with the
/// candidates vector.
Eigen::VectorXd rerank(const std::vector<ActionCommand>& candidates,
                       const Eigen::VectorXd& probs, const SequenceModel& model,
                       const std::vector<std::string>& history, const ShapingConfig& cfg);

}  // namespace n905
