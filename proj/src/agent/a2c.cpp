#include "n905/agent/a2c.hpp"

#include <cmath>
#include <stdexcept>

namespace n905 {

void TrainingConfig::validate() const {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must be in (0,1]");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be > 0");
    if (!(entropy_coef >= 0.0)) throw std::invalid_argument("entropy coefficient must be >= 0");
    if (!(value_coef >= 0.0)) throw std::invalid_argument("value coefficient must be >= 0");
    if (step_cap < 1) throw std::invalid_argument("step cap must be >= 1");
    if (episodes < 0) throw std::invalid_argument("episode budget must be >= 0");
}

std::vector<double> discounted_returns(const Trajectory& traj, double gamma) {
    std::vector<double> g(traj.steps.size(), 0.0);
    double acc = 0.0;  // bootstrap value 0 past the last step
    for (int t = static_cast<int>(traj.steps.size()) - 1; t >= 0; --t) {
        acc = traj.steps[static_cast<size_t>(t)].reward + gamma * acc;
        g[static_cast<size_t>(t)] = acc;
    }
    return g;
}

A2CGradients a2c_gradients(const PolicyParameters& params, const Trajectory& traj,
                           const TrainingConfig& cfg, const ActionSpace& space) {
    if (traj.steps.empty()) throw std::invalid_argument("a2c: empty trajectory");
    A2CGradients g;
    g.actor = Eigen::MatrixXd::Zero(params.actor.rows(), params.actor.cols());
    g.critic = Eigen::VectorXd::Zero(params.critic.size());

    std::vector<double> returns = discounted_returns(traj, cfg.gamma);
    std::vector<int> idx;
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(space.action_dim());

    for (size_t t = 0; t < traj.steps.size(); ++t) {
        const TrajectoryStep& st = traj.steps[t];
        const double advantage = returns[t] - st.value;

        // Per-candidate weights collapsing the policy-gradient and entropy
        // terms into one sparse accumulation:
        //   w_i = A*([i==chosen] - d_i) - beta*d_i*(log d_i - sum_j d_j log d_j)
        double sum_dlogd = 0.0;
        for (long i = 0; i < st.dist.size(); ++i) {
            if (st.dist[i] > 0.0) sum_dlogd += st.dist[i] * std::log(st.dist[i]);
        }
        coef.setZero();
        for (long i = 0; i < st.dist.size(); ++i) {
            const double d = st.dist[i];
            double w = (static_cast<int>(i) == st.chosen ? advantage : 0.0) - advantage * d;
            if (d > 0.0) {
                w -= cfg.entropy_coef * d * (std::log(d) - sum_dlogd);
            }
            if (w == 0.0) continue;
            space.feature_indices((*st.candidates)[static_cast<size_t>(i)], idx);
            for (int j : idx) coef[j] += w;
        }
        g.actor.noalias() += (st.grad_scale * coef) * st.features.transpose();

        const double value_now = params.critic.dot(st.features);
        g.critic.noalias() += cfg.value_coef * 2.0 * (returns[t] - value_now) * st.features;
    }
    return g;
}

PolicyParameters a2c_update(const PolicyParameters& params, const Trajectory& traj,
                            const TrainingConfig& cfg, const ActionSpace& space) {
    A2CGradients g = a2c_gradients(params, traj, cfg, space);
    if (!g.actor.allFinite() || !g.critic.allFinite()) {
        throw std::runtime_error("a2c_update: non-finite gradient over a trajectory of " +
                                 std::to_string(traj.steps.size()) + " steps");
    }
    PolicyParameters out;
    out.actor = params.actor + cfg.learning_rate * g.actor;
    out.critic = params.critic + cfg.learning_rate * g.critic;
    if (!out.all_finite()) {
        throw std::runtime_error("a2c_update: parameters became non-finite");
    }
    return out;
}

}  // namespace n905
