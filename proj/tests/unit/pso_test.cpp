#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "twinswarm/errors.hpp"
#include "twinswarm/pso.hpp"

namespace twinswarm {
namespace {

AgentState agent_with(std::size_t id, Vec2 p, BestRecord personal, BestRecord neighborhood,
                      double last_estimate) {
    AgentState a;
    a.id = id;
    a.position = p;
    a.personal_best = personal;
    a.neighborhood_best = neighborhood;
    a.last_estimate = last_estimate;
    return a;
}

TEST(FuseKnowledge, IsolatedAgentFallsBackToOwnBest) {
    AgentState a = agent_with(0, {10, 10}, {{0, 0}, 80}, {{0, 0}, 80}, 70);
    a = fuse_knowledge(a, {});
    EXPECT_EQ(a.personal_best, (BestRecord{{10, 10}, 70}));
    EXPECT_EQ(a.neighborhood_best, a.personal_best);
}

TEST(FuseKnowledge, PicksMinimumOfFusedSet) {
    const Vec2 pa{1, 2};
    const Vec2 pb{3, 4};
    AgentState a = agent_with(0, {9, 9}, {{8, 8}, 55}, {{7, 7}, 50}, 58);
    const std::vector<Report> reports{{1, pa, 40}, {2, pb, 60}};

    // Brute force over {incumbent, personal best, reports}.
    std::vector<BestRecord> fused{a.neighborhood_best, a.personal_best};
    for (const Report& r : reports) fused.push_back({r.position, r.est_distance});
    BestRecord expected = fused.front();
    for (const BestRecord& r : fused) {
        if (r.est_distance < expected.est_distance) expected = r;
    }

    a = fuse_knowledge(a, reports);
    EXPECT_EQ(a.neighborhood_best, expected);
    EXPECT_EQ(a.neighborhood_best, (BestRecord{pa, 40}));
}

TEST(FuseKnowledge, NoImprovementKeepsIncumbent) {
    AgentState a = agent_with(0, {9, 9}, {{8, 8}, 35}, {{7, 7}, 30}, 36);
    const std::vector<Report> reports{{1, {1, 2}, 40}};
    a = fuse_knowledge(a, reports);
    EXPECT_EQ(a.neighborhood_best, (BestRecord{{7, 7}, 30}));
    EXPECT_EQ(a.personal_best, (BestRecord{{8, 8}, 35}));
}

TEST(FuseKnowledge, TiesGoToLowestSenderThenIncumbent) {
    AgentState a = agent_with(5, {0, 0}, {{0, 0}, 90}, {{0, 0}, 90}, 90);
    const std::vector<Report> reports{{7, {7, 7}, 20}, {3, {3, 3}, 20}, {4, {4, 4}, 25}};
    a = fuse_knowledge(a, reports);
    EXPECT_EQ(a.neighborhood_best.position, Vec2(3, 3));

    const std::vector<Report> equal_to_incumbent{{1, {1, 1}, 20}};
    a = fuse_knowledge(a, equal_to_incumbent);
    EXPECT_EQ(a.neighborhood_best.position, Vec2(3, 3));
}

TEST(FuseKnowledge, RejectsCorruptedReports) {
    const AgentState a = agent_with(0, {0, 0}, {{0, 0}, 10}, {{0, 0}, 10}, 10);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(fuse_knowledge(a, std::vector<Report>{{1, {0, 0}, -1.0}}), SimulationError);
    EXPECT_THROW(fuse_knowledge(a, std::vector<Report>{{1, {0, 0}, nan}}), SimulationError);
    EXPECT_THROW(fuse_knowledge(a, std::vector<Report>{{1, {nan, 0}, 3.0}}), SimulationError);
}

TEST(FuseKnowledgeProperty, MatchesBruteForceAndKeepsOrdering) {
    RngStream rng(42);
    for (int trial = 0; trial < 2000; ++trial) {
        const double pb = rng.uniform(0, 100);
        const double nb = rng.uniform(0, pb);
        AgentState a = agent_with(0, {rng.uniform(0, 9), 0}, {{1, 1}, pb}, {{2, 2}, nb},
                                  rng.uniform(0, 120));
        std::vector<Report> reports;
        const auto count = rng.uniform_below(6);
        for (std::uint64_t k = 0; k < count; ++k) {
            reports.push_back({k + 1, {rng.uniform(0, 9), rng.uniform(0, 9)}, rng.uniform(0, 120)});
        }
        double expected = std::min(nb, std::min(pb, a.last_estimate));
        for (const Report& r : reports) expected = std::min(expected, r.est_distance);

        const AgentState fused = fuse_knowledge(a, reports);
        ASSERT_LE(fused.personal_best.est_distance, pb);
        ASSERT_LE(fused.neighborhood_best.est_distance, fused.personal_best.est_distance);
        ASSERT_EQ(fused.neighborhood_best.est_distance, expected);
    }
}

TEST(Step, FixedPointWhenEverythingCoincides) {
    const Vec2 p{12, 34};
    AgentState a = agent_with(0, p, {p, 5}, {p, 5}, 5);
    RngStream rng(1);
    a = step(a, {}, SpeedLimit{5}, rng);
    EXPECT_EQ(a.velocity, Vec2(0, 0));
    EXPECT_EQ(a.position, p);
}

TEST(Step, HandEvaluatedUpdate) {
    // v' = 0 + 1*1*((1,0)-(0,0)) + 1*1*((0,1)-(0,0)) = (1,1); p' = (1,1)
    const AgentState a = agent_with(0, {0, 0}, {{1, 0}, 1}, {{0, 1}, 1}, 1);
    const PsoCoefficients unit{1.0, 1.0};
    const AgentState moved = advance(a, unit, SpeedLimit{5}, 1.0, 1.0);
    EXPECT_EQ(moved.velocity, Vec2(1, 1));
    EXPECT_EQ(moved.position, Vec2(1, 1));

    // |(1,1)| = sqrt 2 > 1, rescaled to (1/sqrt 2, 1/sqrt 2).
    const AgentState slow = advance(a, unit, SpeedLimit{1}, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(slow.velocity.x, 1.0 / std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(slow.velocity.y, 1.0 / std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(slow.position.x, 1.0 / std::sqrt(2.0));
}

TEST(Step, DrawsExactlyTwoWeightsInOrder) {
    const AgentState a = agent_with(0, {0, 0}, {{30, 0}, 1}, {{0, 40}, 1}, 1);
    const PsoCoefficients coeffs{};
    RngStream rng(8);
    RngStream replay(8);
    const AgentState stepped = step(a, coeffs, SpeedLimit{100}, rng);
    const double r1 = replay.uniform01();
    const double r2 = replay.uniform01();
    const AgentState expected = advance(a, coeffs, SpeedLimit{100}, r1, r2);
    EXPECT_EQ(stepped.velocity, expected.velocity);
    EXPECT_EQ(stepped.position, expected.position);
    EXPECT_EQ(rng.next_u64(), replay.next_u64());
}

TEST(Step, NormalWeightsOptionUsesBoxMuller) {
    const AgentState a = agent_with(0, {0, 0}, {{30, 0}, 1}, {{0, 40}, 1}, 1);
    PsoCoefficients coeffs;
    coeffs.distribution = CoefficientDistribution::StandardNormal;
    RngStream rng(9);
    RngStream replay(9);
    const AgentState stepped = step(a, coeffs, SpeedLimit{1000}, rng);
    const double r1 = replay.standard_normal();
    const double r2 = replay.standard_normal();
    EXPECT_EQ(stepped.position, advance(a, coeffs, SpeedLimit{1000}, r1, r2).position);
}

TEST(StepProperty, SpeedNeverExceedsLimit) {
    RngStream rng(10);
    const SpeedLimit limit{5};
    for (int k = 0; k < 20000; ++k) {
        AgentState a = agent_with(0, {rng.uniform(0, 640), rng.uniform(0, 600)},
                                  {{rng.uniform(0, 640), rng.uniform(0, 600)}, 1},
                                  {{rng.uniform(0, 640), rng.uniform(0, 600)}, 1}, 1);
        a.velocity = clamp_speed({rng.uniform(-5, 5), rng.uniform(-5, 5)}, limit);
        a = step(a, {}, limit, rng);
        ASSERT_LE(a.velocity.norm(), 5.0 * (1.0 + 1e-9));
    }
}

TEST(PsoCoefficients, Validation) {
    EXPECT_NO_THROW(validate(PsoCoefficients{2.0, 2.0}));
    EXPECT_NO_THROW(validate(PsoCoefficients{0.0, 1.0}));
    EXPECT_THROW(validate(PsoCoefficients{0.0, 0.0}), ConfigError);
    EXPECT_THROW(validate(PsoCoefficients{-1.0, 1.0}), ConfigError);
    EXPECT_THROW(validate(PsoCoefficients{1.0, std::numeric_limits<double>::infinity()}), ConfigError);
}

TEST(MakeAgent, SeedsBothRecordsFromFirstEstimate) {
    const AgentState a = make_agent(3, {1, 2}, 42);
    EXPECT_EQ(a.id, 3u);
    EXPECT_EQ(a.velocity, Vec2(0, 0));
    EXPECT_EQ(a.personal_best, (BestRecord{{1, 2}, 42}));
    EXPECT_EQ(a.neighborhood_best, a.personal_best);
}

}  // namespace
}  // namespace twinswarm
