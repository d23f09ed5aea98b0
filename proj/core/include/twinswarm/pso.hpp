#pragma once
/**
 * @file pso.hpp
 * @brief Per-agent memory and the neighborhood-best PSO update.
 *
 * Each round an agent first fuses whatever (position, estimate) reports its
 * communication scheme delivered into its personal and neighborhood bests,
 * then moves:
 *
 *   v' = clamp(v + c1 r1 (p_personal - p) + c2 r2 (p_neighborhood - p))
 *   p' = p + v'
 *
 * with one scalar r1 and one scalar r2 drawn per agent per round.
 */

#include <cstddef>
#include <span>

#include "twinswarm/geometry.hpp"
#include "twinswarm/random.hpp"

namespace twinswarm {

enum class CoefficientDistribution {
    Uniform01,       ///< r ~ U(0, 1), classical PSO
    StandardNormal,  ///< r ~ N(0, 1), for sensitivity studies
};

struct PsoCoefficients {
    double c1{2.0};
    double c2{2.0};
    CoefficientDistribution distribution{CoefficientDistribution::Uniform01};
};

/// Throws ConfigError unless c1, c2 are finite, >= 0 and not both zero.
void validate(const PsoCoefficients& coeffs);

/// A remembered position together with the range estimate taken there.
struct BestRecord {
    Vec2 position;
    double est_distance{0.0};

    friend bool operator==(const BestRecord&, const BestRecord&) = default;
};

/// One (p_j, d_j) pair delivered to an agent this round.
struct Report {
    std::size_t sender{0};
    Vec2 position;
    double est_distance{0.0};
};

struct AgentState {
    std::size_t id{0};
    Vec2 position;
    Vec2 velocity;
    BestRecord personal_best;
    BestRecord neighborhood_best;
    double last_estimate{0.0};
};

/// Fresh agent at `position` whose first estimate seeds both best records.
AgentState make_agent(std::size_t id, const Vec2& position, double first_estimate);

/// Folds this round's estimate and the received reports into the agent's
/// memory. The personal best improves only on a strictly smaller estimate.
/// The neighborhood best becomes the smallest-estimate record among the
/// incumbent, the updated personal best and all reports; among equal
/// candidates the lowest sender id wins, and an equal candidate never
/// displaces the incumbent.
///
/// Throws SimulationError on a report with a negative or non-finite estimate
/// or a non-finite position.
AgentState fuse_knowledge(AgentState self, std::span<const Report> reports);

/// Draws one PSO weight from the configured distribution (one Uniform01 draw
/// or one Box-Muller sample).
double draw_coefficient(CoefficientDistribution distribution, RngStream& rng);

/// Velocity and position update with explicit random weights.
AgentState advance(AgentState self, const PsoCoefficients& coeffs, const SpeedLimit& limit,
                   double r1, double r2);

/// Draws r1 then r2 from rng and applies advance(). Position is not confined
/// to the map.
AgentState step(AgentState self, const PsoCoefficients& coeffs, const SpeedLimit& limit,
                RngStream& rng);

}  // namespace twinswarm
