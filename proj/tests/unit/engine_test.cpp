#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "twinswarm/engine.hpp"
#include "twinswarm/errors.hpp"

namespace twinswarm {
namespace {

ScenarioConfig base_config(CommScheme scheme, std::size_t agents = 50) {
    ScenarioConfig c;
    c.scheme = scheme;
    c.agent_count = agents;
    return c;
}

std::string config_error(const ScenarioConfig& c) {
    try {
        validate(c);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

TEST(Initialize, PlacesAgentsUniformlyOnTheMap) {
    ScenarioConfig c = base_config(DigitalTwin{});
    c.master_seed = 123;
    const Swarm swarm = initialize(c);
    ASSERT_EQ(swarm.agents.size(), 50u);

    // Replaying the placement stream reproduces every position: x then y per agent.
    RngStream replay(123, {static_cast<std::uint64_t>(StreamPurpose::Placement)});
    for (const AgentState& a : swarm.agents) {
        EXPECT_GE(a.position.x, 0.0);
        EXPECT_LT(a.position.x, 640.0);
        EXPECT_GE(a.position.y, 0.0);
        EXPECT_LT(a.position.y, 600.0);
        const double x = replay.uniform(0, 640);
        const double y = replay.uniform(0, 600);
        EXPECT_EQ(a.position, Vec2(x, y));
        EXPECT_EQ(a.velocity, Vec2(0, 0));
        EXPECT_EQ(a.personal_best, (BestRecord{a.position, a.last_estimate}));
        EXPECT_EQ(a.neighborhood_best, a.personal_best);
    }
}

TEST(Initialize, SingleAgentAndDeterminism) {
    const ScenarioConfig one = base_config(DigitalTwin{}, 1);
    const Swarm s = initialize(one);
    ASSERT_EQ(s.agents.size(), 1u);
    EXPECT_EQ(s.agents[0].neighborhood_best, s.agents[0].personal_best);

    const ScenarioConfig c = base_config(D2D{100});
    const Swarm a = initialize(c);
    const Swarm b = initialize(c);
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
        EXPECT_EQ(a.agents[i].position, b.agents[i].position);
        EXPECT_EQ(a.agents[i].last_estimate, b.agents[i].last_estimate);
    }
}

TEST(Validate, NamesTheViolatedBound) {
    ScenarioConfig c = base_config(DigitalTwin{});
    EXPECT_EQ(config_error(c), "");

    c.target = {700, 300};
    EXPECT_NE(config_error(c).find("target"), std::string::npos);
    c = base_config(DigitalTwin{}, 0);
    EXPECT_NE(config_error(c).find("agent_count"), std::string::npos);
    c = base_config(DigitalTwin{});
    c.max_rounds = 0;
    EXPECT_NE(config_error(c).find("max_rounds"), std::string::npos);
    c = base_config(DigitalTwin{});
    c.sigma = -1;
    EXPECT_NE(config_error(c).find("sigma"), std::string::npos);
    c = base_config(DigitalTwin{});
    c.v_max = 0;
    EXPECT_NE(config_error(c).find("v_max"), std::string::npos);
    c = base_config(Cellular{50});
    EXPECT_NE(config_error(c).find("partners"), std::string::npos);
    c = base_config(D2D{0});
    EXPECT_NE(config_error(c).find("radius"), std::string::npos);
    c = base_config(DigitalTwin{});
    c.tx_budget = 0;
    EXPECT_NE(config_error(c).find("tx_budget"), std::string::npos);
    c = base_config(DigitalTwin{});
    c.coeffs = {0, 0};
    EXPECT_NE(config_error(c).find("c1"), std::string::npos);
}

TEST(Run, DigitalTwinBudgetAllowsTenRounds) {
    ScenarioConfig c = base_config(DigitalTwin{});
    c.tx_budget = 1000;
    c.max_rounds = 1000;
    const RunResult r = run(c);
    EXPECT_EQ(r.rounds_executed, 10u);
    EXPECT_EQ(r.termination, TerminationReason::BudgetExhausted);
    EXPECT_EQ(r.final_metrics().cumulative_tx, 1000u);
}

TEST(Run, FullCellularBudgetAllowsTwoRoundsForTenAgents) {
    ScenarioConfig c = base_config(Cellular{}, 10);
    c.tx_budget = 1000;
    c.max_rounds = 1000;
    const RunResult r = run(c);
    // 4 * 10 * 9 = 360 per round; floor(1000 / 360) = 2.
    EXPECT_EQ(r.rounds_executed, 2u);
    EXPECT_EQ(r.final_metrics().cumulative_tx, 720u);
    EXPECT_EQ(r.termination, TerminationReason::BudgetExhausted);
}

TEST(Run, BudgetBelowOneRoundRunsNothing) {
    ScenarioConfig c = base_config(Cellular{});
    c.tx_budget = 1000;  // 9800 per round
    const RunResult r = run(c);
    EXPECT_EQ(r.rounds_executed, 0u);
    EXPECT_EQ(r.termination, TerminationReason::BudgetExhausted);
    EXPECT_EQ(&r.final_metrics(), &r.initial);
}

TEST(Run, OneRoundLimit) {
    ScenarioConfig c = base_config(D2D{150});
    c.max_rounds = 1;
    const RunResult r = run(c);
    ASSERT_EQ(r.rounds.size(), 1u);
    EXPECT_EQ(r.rounds_executed, 1u);
    EXPECT_EQ(r.rounds[0].round, 1u);
    EXPECT_EQ(r.termination, TerminationReason::RoundLimit);
    EXPECT_EQ(r.final_positions.size(), 50u);
}

TEST(RunProperty, BudgetCeilingAndConstantCostRoundCount) {
    RngStream rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng.uniform_below(30);
        const bool twin = rng.uniform01() < 0.5;
        ScenarioConfig c = base_config(twin ? CommScheme{DigitalTwin{}}
                                             : CommScheme{Cellular{1 + rng.uniform_below(n - 1)}},
                                        n);
        c.max_rounds = 1 + rng.uniform_below(80);
        c.tx_budget = 1 + rng.uniform_below(5000);
        c.master_seed = trial;
        const RunResult r = run(c);
        const std::uint64_t per_round = worst_case_round_cost(c.scheme, n);
        ASSERT_LE(r.final_metrics().cumulative_tx, *c.tx_budget);
        ASSERT_EQ(r.rounds_executed, std::min<std::uint64_t>(c.max_rounds, *c.tx_budget / per_round));
    }
}

TEST(Run, D2DRealizedAndConservativeBudgets) {
    ScenarioConfig c = base_config(D2D{120}, 30);
    c.tx_budget = 3000;
    c.max_rounds = 200;
    const RunResult realized = run(c);
    EXPECT_LE(realized.final_metrics().cumulative_tx, 3000u);
    EXPECT_EQ(realized.termination, TerminationReason::BudgetExhausted);

    c.budget_mode = BudgetMode::Conservative;
    const RunResult conservative = run(c);
    // Every round must have been admissible at its fully connected cost
    // 2 * 30 * 29 = 1740, and the next one must not be.
    const std::uint64_t worst = 1740;
    std::uint64_t before = 0;
    for (const RoundMetrics& m : conservative.rounds) {
        EXPECT_LE(before + worst, 3000u);
        before = m.cumulative_tx;
    }
    EXPECT_GT(before + worst, 3000u);
    EXPECT_EQ(conservative.termination, TerminationReason::BudgetExhausted);
    EXPECT_GE(realized.rounds_executed, conservative.rounds_executed);
}

TEST(Run, IdenticalConfigIdenticalResult) {
    for (const CommScheme& scheme : {CommScheme{D2D{100}}, CommScheme{Cellular{3}}, CommScheme{DigitalTwin{}}}) {
        ScenarioConfig c = base_config(scheme);
        c.max_rounds = 60;
        const RunResult a = run(c);
        const RunResult b = run(c);
        EXPECT_EQ(a.rounds, b.rounds);
        EXPECT_EQ(a.final_positions, b.final_positions);
        EXPECT_EQ(a.config_digest, b.config_digest);
    }
}

TEST(Run, MetricsAreConsistent) {
    ScenarioConfig c = base_config(Cellular{2});
    c.max_rounds = 100;
    std::vector<std::vector<AgentState>> seen;
    const RunResult r = run(c, [&](const RoundView& v) {
        seen.emplace_back(v.agents.begin(), v.agents.end());
    });
    ASSERT_EQ(seen.size(), 101u);
    std::uint64_t last_tx = 0;
    for (const RoundMetrics& m : r.rounds) {
        EXPECT_GE(m.cumulative_tx, last_tx);
        last_tx = m.cumulative_tx;
        EXPECT_LE(m.min_true_distance, m.mean_true_distance);
        const RoundMetrics again = measure_swarm(m.round, seen[m.round], c.target, m.cumulative_tx);
        EXPECT_EQ(again, m);
    }
}

TEST(Run, PersonalBestsNeverWorsen) {
    for (const CommScheme& scheme : {CommScheme{D2D{80}}, CommScheme{Cellular{1}}, CommScheme{DigitalTwin{}}}) {
        ScenarioConfig c = base_config(scheme);
        c.max_rounds = 150;
        std::vector<double> best(c.agent_count, 1e300);
        run(c, [&](const RoundView& v) {
            for (const AgentState& a : v.agents) {
                ASSERT_LE(a.personal_best.est_distance, best[a.id]);
                ASSERT_LE(a.neighborhood_best.est_distance, a.personal_best.est_distance);
                ASSERT_LE(a.velocity.norm(), c.v_max * (1.0 + 1e-9));
                best[a.id] = a.personal_best.est_distance;
            }
        });
    }
}

TEST(Run, NoiselessDigitalTwinBestOnlyImproves) {
    ScenarioConfig c = base_config(DigitalTwin{});
    c.sigma = 0.0;
    c.max_rounds = 200;
    double best_true_ever = 1e300;
    std::vector<double> best_visited;
    const RunResult r = run(c, [&](const RoundView& v) {
        for (const AgentState& a : v.agents) {
            best_true_ever = std::min(best_true_ever, distance(a.position, c.target));
        }
        best_visited.push_back(best_true_ever);
    });
    double last = r.initial.swarm_best_est;
    EXPECT_EQ(last, r.initial.min_true_distance);
    for (std::size_t t = 0; t < r.rounds.size(); ++t) {
        const RoundMetrics& m = r.rounds[t];
        EXPECT_LE(m.swarm_best_est, last);
        last = m.swarm_best_est;
        // With exact ranging the recorded best is the closest position visited
        // up to the previous round (estimates are folded in one round later).
        EXPECT_EQ(m.swarm_best_est, best_visited[t]);
    }
}

TEST(Run, StationaryAtTargetWithoutNoise) {
    ScenarioConfig c = base_config(DigitalTwin{}, 8);
    c.sigma = 0.0;
    c.max_rounds = 50;
    const std::vector<Vec2> at_target(8, c.target);
    const RunResult r = run(c, place(c, at_target));
    for (const RoundMetrics& m : r.rounds) {
        EXPECT_EQ(m.mean_true_distance, 0.0);
        EXPECT_EQ(m.swarm_best_est, 0.0);
    }
    for (const Vec2& p : r.final_positions) EXPECT_EQ(p, c.target);
}

TEST(Place, RejectsWrongCount) {
    const ScenarioConfig c = base_config(DigitalTwin{}, 3);
    const std::vector<Vec2> two{{1, 1}, {2, 2}};
    EXPECT_THROW(place(c, two), ConfigError);
}

TEST(ConfigDigest, SensitiveToEveryField) {
    const ScenarioConfig base = base_config(D2D{100});
    ScenarioConfig other = base;
    other.master_seed = 2;
    EXPECT_NE(config_digest(base), config_digest(other));
    other = base;
    other.scheme = D2D{100.5};
    EXPECT_NE(config_digest(base), config_digest(other));
    other = base;
    other.tx_budget = 1000;
    EXPECT_NE(config_digest(base), config_digest(other));
    EXPECT_EQ(config_digest(base), config_digest(base_config(D2D{100})));
}

}  // namespace
}  // namespace twinswarm
