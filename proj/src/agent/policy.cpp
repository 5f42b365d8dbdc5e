#include "n905/agent/policy.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "n905/util/rng.hpp"

namespace n905 {

PolicyParameters PolicyParameters::zeros(int action_dim, int feature_dim) {
    PolicyParameters p;
    p.actor = Eigen::MatrixXd::Zero(action_dim, feature_dim);
    p.critic = Eigen::VectorXd::Zero(feature_dim);
    return p;
}

PolicyParameters PolicyParameters::seeded(int action_dim, int feature_dim, std::uint64_t seed,
                                          double scale) {
    PolicyParameters p = zeros(action_dim, feature_dim);
    Rng rng(seed);
    for (int i = 0; i < action_dim; ++i) {
        for (int j = 0; j < feature_dim; ++j) {
            p.actor(i, j) = scale * (2.0 * rng.uniform01() - 1.0);
        }
    }
    return p;
}

void save_policy(const PolicyParameters& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write policy file: " + path);
    out << "n905-policy 1\n";
    out << p.actor.rows() << " " << p.actor.cols() << "\n";
    char buf[64];
    for (long i = 0; i < p.actor.rows(); ++i) {
        for (long j = 0; j < p.actor.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", p.actor(i, j));
            out << buf << (j + 1 == p.actor.cols() ? "\n" : " ");
        }
    }
    for (long j = 0; j < p.critic.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", p.critic[j]);
        out << buf << (j + 1 == p.critic.size() ? "\n" : " ");
    }
}

PolicyParameters load_policy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open policy file: " + path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "n905-policy" || version != 1) {
        throw std::runtime_error("not a policy file: " + path);
    }
    long rows = 0, cols = 0;
    in >> rows >> cols;
    if (rows <= 0 || cols <= 0) throw std::runtime_error("bad policy header: " + path);
    PolicyParameters p = PolicyParameters::zeros(static_cast<int>(rows), static_cast<int>(cols));
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) in >> p.actor(i, j);
    for (long j = 0; j < cols; ++j) in >> p.critic[j];
    if (!in) throw std::runtime_error("truncated policy file: " + path);
    return p;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
    Eigen::VectorXd out = (logits.array() - logits.maxCoeff()).exp();
    return out / out.sum();
}

Eigen::VectorXd policy_distribution(const PolicyParameters& params,
                                    const Eigen::VectorXd& state_features,
                                    const std::vector<ActionCommand>& candidates,
                                    const ActionSpace& space) {
    if (candidates.empty()) {
        throw std::invalid_argument("policy_distribution: no candidates");
    }
    // Precompute y = actor * s once; each logit is a sparse dot with y.
    Eigen::VectorXd y = params.actor * state_features;
    Eigen::VectorXd logits(static_cast<long>(candidates.size()));
    std::vector<int> idx;
    for (size_t i = 0; i < candidates.size(); ++i) {
        space.feature_indices(candidates[i], idx);
        double v = 0.0;
        for (int j : idx) v += y[j];
        logits[static_cast<long>(i)] = v;
    }
    return softmax(logits);
}

}  // namespace n905
