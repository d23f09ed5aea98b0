#pragma once
/**
 * @file engine.hpp
 * @brief One simulated run: initialization and the per-round
 *        snapshot -> exchange -> fuse -> move -> measure loop.
 *
 * Randomness is split into independent streams derived from the run seed:
 * one for initial placement, one per agent for sensing noise, one per agent
 * for the PSO weights, and one per round for the comms scheme. Changing the
 * scheme therefore never shifts the placement, noise or motion draws.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twinswarm/comms.hpp"
#include "twinswarm/geometry.hpp"
#include "twinswarm/pso.hpp"
#include "twinswarm/random.hpp"
#include "twinswarm/sensing.hpp"

namespace twinswarm {

enum class BudgetMode {
    Realized,      ///< build the exchange, commit the round only if its real cost fits
    Conservative,  ///< require the fully connected cost to fit before each round
};

struct ScenarioConfig {
    double map_width{640.0};
    double map_height{600.0};
    Vec2 target{400.0, 300.0};
    std::size_t agent_count{50};
    double sigma{1.0};
    double v_max{5.0};
    PsoCoefficients coeffs{};
    CommScheme scheme{DigitalTwin{}};
    std::size_t max_rounds{500};
    std::optional<std::uint64_t> tx_budget;
    BudgetMode budget_mode{BudgetMode::Realized};
    std::uint64_t master_seed{1};
};

/// Throws ConfigError naming the first violated bound.
void validate(const ScenarioConfig& config);

/// Canonical one-line description of every field; stable across versions of
/// this library for identical configs.
std::string canonical_string(const ScenarioConfig& config);

/// FNV-1a 64 of canonical_string().
std::uint64_t config_digest(const ScenarioConfig& config);

/// Stream purposes used in derive_seed(run_seed, {purpose, index}).
enum class StreamPurpose : std::uint64_t {
    Placement = 1,
    Sensing = 2,
    Motion = 3,
    Comms = 4,
};

struct Swarm {
    std::vector<AgentState> agents;
    std::vector<RngStream> sensing;  ///< one per agent
    std::vector<RngStream> motion;   ///< one per agent
};

/// Uniform placement on the map (x then y per agent, id order, from the
/// placement stream), zero velocity, and a first measurement seeding both
/// best records.
Swarm initialize(const ScenarioConfig& config);

/// Like initialize() but with caller-chosen starting positions (one per
/// agent). The placement stream is not consumed.
Swarm place(const ScenarioConfig& config, std::span<const Vec2> positions);

/// Ground-truth metrics, recorded after each round (round 0 = initial state).
struct RoundMetrics {
    std::size_t round{0};
    double mean_true_distance{0.0};
    double min_true_distance{0.0};
    double swarm_best_est{0.0};  ///< min over agents of the personal-best estimate
    std::uint64_t cumulative_tx{0};

    friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

RoundMetrics measure_swarm(std::size_t round, std::span<const AgentState> agents,
                           const Vec2& target, std::uint64_t cumulative_tx);

enum class TerminationReason { RoundLimit, BudgetExhausted };

std::string to_string(TerminationReason reason);

struct RunResult {
    std::uint64_t config_digest{0};
    RoundMetrics initial;
    std::vector<RoundMetrics> rounds;  ///< rounds 1..rounds_executed
    std::size_t rounds_executed{0};
    TerminationReason termination{TerminationReason::RoundLimit};
    std::vector<Vec2> final_positions;

    /// Metrics of the last executed round, or the initial state if none ran.
    const RoundMetrics& final_metrics() const { return rounds.empty() ? initial : rounds.back(); }
};

/// Read-only view handed to an observer after initialization (round 0,
/// no exchange) and after every executed round.
struct RoundView {
    std::size_t round{0};
    std::span<const AgentState> agents;
    const RoundExchange* exchange{nullptr};
    std::uint64_t cumulative_tx{0};
};

using RoundObserver = std::function<void(const RoundView&)>;

/// Runs the scenario to its round limit or until the next round's cost would
/// overrun the transmission budget. Rounds are never partially executed.
RunResult run(const ScenarioConfig& config, const RoundObserver& observer = {});

/// Runs from an already initialized swarm (see place()).
RunResult run(const ScenarioConfig& config, Swarm swarm, const RoundObserver& observer = {});

}  // namespace twinswarm
