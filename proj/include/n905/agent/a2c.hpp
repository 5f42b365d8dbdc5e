#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "n905/agent/policy.hpp"

namespace n905 {

struct TrainingConfig {
    double gamma = 0.95;
    double learning_rate = 0.01;
    double entropy_coef = 0.01;
    // Episode gradients are sums over up to step_cap highly correlated
    // steps with ~50 active features each; the quadratic value loss
    // diverges unless its share of the step stays small.
    double value_coef = 0.01;
    int step_cap = 60;
    int episodes = 5000;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One decision: state features, the candidate set, the distribution the
/// action was actually sampled from, and the collected reward/value.
/// grad_scale is 1 for plain policy steps and (1 - lambda) for shaped
/// steps, where the sampled distribution is a blend. Candidate sets are
/// shared snapshots; they only change when the belief graph grows.
struct TrajectoryStep {
    Eigen::VectorXd features;
    std::shared_ptr<const std::vector<ActionCommand>> candidates;
    Eigen::VectorXd dist;
    int chosen = -1;
    double grad_scale = 1.0;
    double reward = 0.0;
    double value = 0.0;  // V(s) at collection time, the advantage baseline
};

struct Trajectory {
    std::vector<TrajectoryStep> steps;
};

/// Discounted returns with a zero bootstrap at the end of the trajectory.
std::vector<double> discounted_returns(const Trajectory& traj, double gamma);

struct A2CGradients {
    Eigen::MatrixXd actor;
    Eigen::VectorXd critic;
};

/// Ascent direction of
///   sum_t [ A_t log d_t(c_t) + beta H(d_t) ] - c_v sum_t (G_t - v.s_t)^2
/// with A_t = G_t - value_t held constant.
A2CGradients a2c_gradients(const PolicyParameters& params, const Trajectory& traj,
                           const TrainingConfig& cfg, const ActionSpace& space);

/// One gradient step of size learning_rate. Throws std::runtime_error on a
/// non-finite gradient, reporting the first offending step.
PolicyParameters a2c_update(const PolicyParameters& params, const Trajectory& traj,
                            const TrainingConfig& cfg, const ActionSpace& space);

}  // namespace n905
