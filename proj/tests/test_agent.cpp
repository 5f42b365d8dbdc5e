#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "n905/agent/agent.hpp"
#include "n905/harness/experiment.hpp"
#include "support/paths.hpp"

using namespace n905;
using n905::testing::data_path;

namespace {

struct Fixture {
    GameSpec spec;
    ExtractionRules rules;
    HasAKnowledgeBase hasa;
    FactBase facts;
    SequenceModel seq;
    AgentContext ctx;

    Fixture() {
        spec = load_game(data_path("nine05.spec"));
        rules = load_rules(data_path("extract.rules"));
        hasa = load_hasa(data_path("hasa.tsv"));
        facts = load_facts(data_path("facts.tsv"));
        seq = fit_sequence_model(load_corpus(data_path("corpus.txt")), 2, 0.1);
        ctx = make_agent_context(spec, rules, hasa, facts, seq, ShapingConfig{64, 0.5});
    }
};

const Fixture& fixture() {
    static Fixture f;
    return f;
}

bool has_command(const std::vector<ActionCommand>& cands, const std::string& surface) {
    for (const ActionCommand& c : cands)
        if (c.surface == surface) return true;
    return false;
}

Triple obs_triple(const EntityId& s, RelationLabel r, const EntityId& o) {
    return Triple{s, r, o, TripleSource::Observed};
}

// ---------------------------------------------------------------------
// Three-step toy for the gradient oracle: tiny action space, hand-built
// features, distributions produced by the real policy so the stored
// trajectory is consistent with the parameters under test.
// ---------------------------------------------------------------------

struct Toy {
    GameSpec spec;
    Vocabulary vocab{std::vector<EntityId>{"e0", "e1", "e2"}, 4};
    ActionSpace space;
    std::vector<ActionCommand> candidates;

    Toy() {
        VerbDef a;
        a.name = "alpha";
        VerbDef b;
        b.name = "beta";
        b.arity = 1;
        b.classes = {"any"};
        VerbDef c;
        c.name = "gamma";
        c.arity = 1;
        c.classes = {"any"};
        spec.verbs = {a, b, c};
        space = ActionSpace(spec, vocab);

        ActionCommand c0{"alpha", {}, "alpha"};
        ActionCommand c1{"beta", {"e0"}, "beta e0"};
        ActionCommand c2{"gamma", {"e1"}, "gamma e1"};
        candidates = {c0, c1, c2};
    }
};

Trajectory toy_trajectory(const Toy& toy, const PolicyParameters& params,
                          const std::vector<double>& rewards) {
    Trajectory traj;
    auto cands = std::make_shared<const std::vector<ActionCommand>>(toy.candidates);
    for (size_t t = 0; t < rewards.size(); ++t) {
        TrajectoryStep st;
        Eigen::VectorXd s = Eigen::VectorXd::Zero(toy.vocab.feature_dim());
        s[static_cast<long>(t) % toy.vocab.feature_dim()] = 1.0;
        s[(static_cast<long>(t) + 3) % toy.vocab.feature_dim()] = 1.0;
        st.features = s;
        st.candidates = cands;
        st.dist = policy_distribution(params, s, toy.candidates, toy.space);
        st.chosen = static_cast<int>(t % toy.candidates.size());
        st.reward = rewards[t];
        st.value = params.critic.dot(s);
        traj.steps.push_back(std::move(st));
    }
    return traj;
}

/// The scalar objective a2c_gradients ascends, recomputed from scratch.
double toy_objective(const Toy& toy, const Trajectory& traj, const TrainingConfig& cfg,
                     const PolicyParameters& p) {
    std::vector<double> returns = discounted_returns(traj, cfg.gamma);
    double J = 0.0;
    for (size_t t = 0; t < traj.steps.size(); ++t) {
        const TrajectoryStep& st = traj.steps[t];
        Eigen::VectorXd d = policy_distribution(p, st.features, *st.candidates, toy.space);
        double adv = returns[t] - st.value;  // baseline held constant
        J += adv * std::log(d[st.chosen]);
        double entropy = 0.0;
        for (long i = 0; i < d.size(); ++i)
            if (d[i] > 0) entropy -= d[i] * std::log(d[i]);
        J += cfg.entropy_coef * entropy;
        double residual = returns[t] - p.critic.dot(st.features);
        J -= cfg.value_coef * residual * residual;
    }
    return J;
}

}  // namespace

TEST_CASE("candidate generation tracks the belief graph") {
    const Fixture& f = fixture();
    KnowledgeGraph empty;
    auto base = f.ctx.space.generate_candidates(empty);
    CHECK_FALSE(has_command(base, "enter shower"));
    CHECK(has_command(base, "go south"));  // movement always present
    CHECK(has_command(base, "go north"));
    CHECK(has_command(base, "look"));
    CHECK(has_command(base, "wait"));

    KnowledgeGraph with_shower =
        empty.update(infer_hasa(f.hasa, "bathroom"));
    auto aug = f.ctx.space.generate_candidates(with_shower);
    CHECK(has_command(aug, "enter shower"));
    CHECK(has_command(aug, "wash hands in sink"));
    CHECK(has_command(aug, "use toilet"));
}

TEST_CASE("zero-arity templates are independent of the graph") {
    const Fixture& f = fixture();
    auto a = f.ctx.space.generate_candidates(KnowledgeGraph{});
    size_t zero_arity = 0;
    for (const auto& c : a) zero_arity += c.args.empty() ? 1 : 0;
    KnowledgeGraph g = KnowledgeGraph{}.update({obs_triple("towel", RelationLabel::In, "bathroom")});
    auto b = f.ctx.space.generate_candidates(g);
    size_t zero_arity_b = 0;
    for (const auto& c : b) zero_arity_b += c.args.empty() ? 1 : 0;
    CHECK(zero_arity == zero_arity_b);
    CHECK(b.size() > a.size());
}

TEST_CASE("candidate order is deterministic: template order then argument order") {
    const Fixture& f = fixture();
    KnowledgeGraph g = KnowledgeGraph{}.update({
        obs_triple("towel", RelationLabel::In, "bathroom"),
        obs_triple("wallet", RelationLabel::In, "bedroom"),
        obs_triple("keys", RelationLabel::In, "bedroom"),
    });
    auto a = f.ctx.space.generate_candidates(g);
    auto b = f.ctx.space.generate_candidates(g);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    // "take keys" precedes "take towel" and "take wallet" (lexicographic args).
    size_t keys = 0, towel = 0, wallet = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].surface == "take keys") keys = i;
        if (a[i].surface == "take towel") towel = i;
        if (a[i].surface == "take wallet") wallet = i;
    }
    CHECK(keys < towel);
    CHECK(towel < wallet);
}

TEST_CASE("zero parameters give the uniform distribution") {
    const Fixture& f = fixture();
    KnowledgeGraph g = KnowledgeGraph{}.update({obs_triple("towel", RelationLabel::In, "bathroom")});
    auto cands = f.ctx.space.generate_candidates(g);
    PolicyParameters p =
        PolicyParameters::zeros(f.ctx.space.action_dim(), f.ctx.vocab.feature_dim());
    Eigen::VectorXd s = Eigen::VectorXd::Ones(f.ctx.vocab.feature_dim());
    Eigen::VectorXd d = policy_distribution(p, s, cands, f.ctx.space);
    CHECK(d.sum() == doctest::Approx(1.0).epsilon(1e-9));
    for (long i = 0; i < d.size(); ++i) {
        CHECK(d[i] == doctest::Approx(1.0 / static_cast<double>(cands.size())).epsilon(1e-12));
    }
}

TEST_CASE("a single candidate gets probability one") {
    Toy toy;
    PolicyParameters p = PolicyParameters::seeded(toy.space.action_dim(),
                                                  toy.vocab.feature_dim(), 3, 0.5);
    std::vector<ActionCommand> one = {toy.candidates[0]};
    Eigen::VectorXd s = Eigen::VectorXd::Ones(toy.vocab.feature_dim());
    Eigen::VectorXd d = policy_distribution(p, s, one, toy.space);
    REQUIRE(d.size() == 1);
    CHECK(d[0] == 1.0);
}

TEST_CASE("softmax is shift invariant") {
    Eigen::VectorXd logits(3);
    logits << 0.3, -1.2, 2.0;
    Eigen::VectorXd shifted = logits.array() + 41.5;
    Eigen::VectorXd a = softmax(logits);
    Eigen::VectorXd b = softmax(shifted);
    for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("act is deterministic under a fixed rng seed") {
    const Fixture& f = fixture();
    KnowledgeGraph g = KnowledgeGraph{}.update(infer_hasa(f.hasa, "bathroom"));
    PolicyParameters p = PolicyParameters::seeded(f.ctx.space.action_dim(),
                                                  f.ctx.vocab.feature_dim(), 5, 0.1);
    Agent agent(f.ctx, AgentVariant::Baseline);
    Rng r1(99), r2(99);
    auto a = agent.act(p, g, "cold tile", {}, r1);
    auto b = agent.act(p, g, "cold tile", {}, r2);
    CHECK(a.command == b.command);
    CHECK(a.probability == b.probability);
}

TEST_CASE("shaped with lambda 0 and k covering all candidates equals the baseline") {
    const Fixture& f = fixture();
    KnowledgeGraph g = KnowledgeGraph{}.update(infer_hasa(f.hasa, "bathroom"));
    auto cands = f.ctx.space.generate_candidates(g);
    PolicyParameters p = PolicyParameters::seeded(f.ctx.space.action_dim(),
                                                  f.ctx.vocab.feature_dim(), 17, 0.3);
    Eigen::VectorXd s = Eigen::VectorXd::Ones(f.ctx.vocab.feature_dim());
    Eigen::VectorXd base = policy_distribution(p, s, cands, f.ctx.space);
    ShapingConfig cfg{static_cast<int>(cands.size()), 0.0};
    Eigen::VectorXd shaped = rerank(cands, base, f.seq, {}, cfg);
    for (long i = 0; i < base.size(); ++i) CHECK(shaped[i] == base[i]);
}

TEST_CASE("shaped with k=1 returns the policy argmax with probability one") {
    const Fixture& f = fixture();
    KnowledgeGraph g = KnowledgeGraph{}.update(infer_hasa(f.hasa, "bedroom"));
    auto cands = f.ctx.space.generate_candidates(g);
    PolicyParameters p = PolicyParameters::seeded(f.ctx.space.action_dim(),
                                                  f.ctx.vocab.feature_dim(), 23, 0.3);
    Eigen::VectorXd s = Eigen::VectorXd::Ones(f.ctx.vocab.feature_dim());
    Eigen::VectorXd base = policy_distribution(p, s, cands, f.ctx.space);
    long argmax = 0;
    base.maxCoeff(&argmax);
    Eigen::VectorXd shaped = rerank(cands, base, f.seq, {}, ShapingConfig{1, 0.7});
    CHECK(shaped[argmax] == 1.0);
    CHECK(shaped.sum() == 1.0);
}

TEST_CASE("zero rewards with a zero critic: no critic update, entropy-only actor term") {
    Toy toy;
    PolicyParameters p = PolicyParameters::zeros(toy.space.action_dim(),
                                                 toy.vocab.feature_dim());
    TrainingConfig cfg;
    Trajectory traj = toy_trajectory(toy, p, {0.0, 0.0, 0.0});
    A2CGradients g = a2c_gradients(p, traj, cfg, toy.space);
    CHECK(g.critic.isZero(0.0));
    // With a uniform distribution the entropy gradient also vanishes, so the
    // actor term must be exactly zero here; with beta = 0 it is zero anyway.
    CHECK(g.actor.isZero(1e-15));

    TrainingConfig no_entropy = cfg;
    no_entropy.entropy_coef = 0.0;
    PolicyParameters p2 = PolicyParameters::seeded(toy.space.action_dim(),
                                                   toy.vocab.feature_dim(), 7, 0.4);
    Trajectory traj2 = toy_trajectory(toy, p2, {0.0, 0.0, 0.0});
    for (auto& st : traj2.steps) st.value = 0.0;  // zero-initialized critic baseline
    A2CGradients g2 = a2c_gradients(p2, traj2, no_entropy, toy.space);
    // Advantage = 0 - 0 everywhere: pure value fit of zero returns against p2's critic.
    Eigen::MatrixXd zero_actor = Eigen::MatrixXd::Zero(g2.actor.rows(), g2.actor.cols());
    CHECK(g2.actor.isApprox(zero_actor, 1e-12));
}

TEST_CASE("single-step return is exactly the reward") {
    Toy toy;
    PolicyParameters p = PolicyParameters::seeded(toy.space.action_dim(),
                                                  toy.vocab.feature_dim(), 9, 0.2);
    Trajectory traj = toy_trajectory(toy, p, {3.5});
    for (double gamma : {0.5, 0.9, 1.0}) {
        auto g = discounted_returns(traj, gamma);
        CHECK(g[0] == 3.5);
    }
}

TEST_CASE("analytic a2c gradients match central finite differences") {
    Toy toy;
    PolicyParameters p = PolicyParameters::seeded(toy.space.action_dim(),
                                                  toy.vocab.feature_dim(), 31, 0.4);
    p.critic = Eigen::VectorXd::LinSpaced(toy.vocab.feature_dim(), -0.3, 0.5);
    TrainingConfig cfg;
    cfg.gamma = 0.9;
    cfg.entropy_coef = 0.05;
    cfg.value_coef = 0.5;
    Trajectory traj = toy_trajectory(toy, p, {1.0, 0.0, 2.0});
    A2CGradients analytic = a2c_gradients(p, traj, cfg, toy.space);

    const double eps = 1e-5;
    const double tol = 1e-4;
    auto check_close = [&](double fd, double an) {
        double denom = std::max({std::abs(fd), std::abs(an), 1e-6});
        CHECK(std::abs(fd - an) / denom <= tol);
    };
    for (long i = 0; i < p.actor.rows(); ++i) {
        for (long j = 0; j < p.actor.cols(); ++j) {
            PolicyParameters hi = p, lo = p;
            hi.actor(i, j) += eps;
            lo.actor(i, j) -= eps;
            double fd = (toy_objective(toy, traj, cfg, hi) - toy_objective(toy, traj, cfg, lo)) /
                        (2 * eps);
            check_close(fd, analytic.actor(i, j));
        }
    }
    for (long j = 0; j < p.critic.size(); ++j) {
        PolicyParameters hi = p, lo = p;
        hi.critic[j] += eps;
        lo.critic[j] -= eps;
        double fd = (toy_objective(toy, traj, cfg, hi) - toy_objective(toy, traj, cfg, lo)) /
                    (2 * eps);
        check_close(fd, analytic.critic[j]);
    }
}

TEST_CASE("a2c_update rejects non-finite parameters") {
    Toy toy;
    PolicyParameters p = PolicyParameters::seeded(toy.space.action_dim(),
                                                  toy.vocab.feature_dim(), 13, 0.2);
    Trajectory traj = toy_trajectory(toy, p, {1.0});
    p.critic[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(a2c_update(p, traj, TrainingConfig{}, toy.space), std::runtime_error);
}

TEST_CASE("a2c_update on an empty trajectory is an error") {
    Toy toy;
    PolicyParameters p = PolicyParameters::zeros(toy.space.action_dim(),
                                                 toy.vocab.feature_dim());
    CHECK_THROWS_AS(a2c_update(p, Trajectory{}, TrainingConfig{}, toy.space),
                    std::invalid_argument);
}

TEST_CASE("baseline in ablated mode never exceeds reward 2 (spot fuzz)") {
    const Fixture& f = fixture();
    Engine engine(f.spec, GameMode::Ablated);
    Agent agent(f.ctx, AgentVariant::Baseline);
    PolicyParameters p = PolicyParameters::zeros(f.ctx.space.action_dim(),
                                                 f.ctx.vocab.feature_dim());
    TrainingConfig cfg;
    cfg.step_cap = 60;
    Rng rng(2024);
    for (int ep = 0; ep < 200; ++ep) {
        Observation first = engine.reset(static_cast<std::uint64_t>(ep));
        EpisodeResult r = agent.run_episode(engine, first, p, cfg, rng);
        CHECK(r.total_reward <= 2);
    }
}

TEST_CASE("every walkthrough command is generated once the belief graph has seen the room") {
    const Fixture& f = fixture();
    Engine engine(f.spec, GameMode::Full);
    Observation obs = engine.reset(0);
    KnowledgeGraph kg;
    int scripted_reward = 0;
    for (const std::string& text : f.spec.walkthrough) {
        kg.absorb(extract(obs.text, obs.location_id, f.rules));
        auto cands = f.ctx.space.generate_candidates(kg);
        auto cmd = parse_command(f.spec, text);
        REQUIRE(cmd.has_value());
        bool present = false;
        for (const ActionCommand& c : cands) present |= c == *cmd;
        INFO("walkthrough command not generated: ", text);
        CHECK(present);
        StepResult r = engine.step(*cmd);
        scripted_reward += r.obs.reward;
        obs = r.obs;
    }
    CHECK(scripted_reward == 7);
}

TEST_CASE("run_episode honors the step cap") {
    const Fixture& f = fixture();
    Engine engine(f.spec, GameMode::Full);
    Agent agent(f.ctx, AgentVariant::Baseline);
    PolicyParameters p = PolicyParameters::zeros(f.ctx.space.action_dim(),
                                                 f.ctx.vocab.feature_dim());
    TrainingConfig cfg;
    cfg.step_cap = 1;
    Rng rng(1);
    Observation first = engine.reset(0);
    EpisodeResult r = agent.run_episode(engine, first, p, cfg, rng);
    CHECK(r.steps == 1);
    CHECK(r.trajectory.steps.size() == 1);
}

TEST_CASE("sampled distributions are proper and assign the action nonzero probability") {
    const Fixture& f = fixture();
    Engine engine(f.spec, GameMode::Full);
    for (AgentVariant v : {AgentVariant::Baseline, AgentVariant::HasA, AgentVariant::QA,
                           AgentVariant::Shaped}) {
        Agent agent(f.ctx, v);
        PolicyParameters p = PolicyParameters::seeded(f.ctx.space.action_dim(),
                                                      f.ctx.vocab.feature_dim(), 3, 0.05);
        TrainingConfig cfg;
        cfg.step_cap = 20;
        Rng rng(7);
        Observation first = engine.reset(0);
        EpisodeResult r = agent.run_episode(engine, first, p, cfg, rng);
        for (const TrajectoryStep& st : r.trajectory.steps) {
            CHECK(st.dist.sum() == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(st.dist[st.chosen] > 0.0);
        }
    }
}

TEST_CASE("policy parameters round-trip through the checkpoint format") {
    Toy toy;
    PolicyParameters p = PolicyParameters::seeded(toy.space.action_dim(),
                                                  toy.vocab.feature_dim(), 77, 0.9);
    std::string path = "/tmp/n905_test_policy_roundtrip.txt";
    save_policy(p, path);
    PolicyParameters q = load_policy(path);
    CHECK(p.actor == q.actor);
    CHECK(p.critic == q.critic);
}
