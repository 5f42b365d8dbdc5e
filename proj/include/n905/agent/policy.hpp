#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "n905/agent/action.hpp"

namespace n905 {

/// Linear actor-critic weights. logit(c) = a(c)^T * actor * s, V(s) = critic^T s.
struct PolicyParameters {
    Eigen::MatrixXd actor;   // action_dim x feature_dim
    Eigen::VectorXd critic;  // feature_dim

    static PolicyParameters zeros(int action_dim, int feature_dim);
    /// Tiny symmetry-breaking noise on the actor, deterministic in the seed.
    static PolicyParameters seeded(int action_dim, int feature_dim, std::uint64_t seed,
                                   double scale = 1e-4);

    bool all_finite() const { return actor.allFinite() && critic.allFinite(); }
};

/// Deterministic text serialization, exact round-trip.
void save_policy(const PolicyParameters& p, const std::string& path);
PolicyParameters load_policy(const std::string& path);

Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

/// Softmax over the candidates' bilinear logits; sums to 1 within 1e-9.
Eigen::VectorXd policy_distribution(const PolicyParameters& params,
                                    const Eigen::VectorXd& state_features,
                                    const std::vector<ActionCommand>& candidates,
                                    const ActionSpace& space);

}  // namespace n905
