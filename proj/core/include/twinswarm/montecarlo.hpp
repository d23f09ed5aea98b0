#pragma once
/**
 * @file montecarlo.hpp
 * @brief Batches of i.i.d. runs over a parameter sweep, their aggregation
 *        into mean convergence curves, and the global-best PSO reference.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "twinswarm/comms.hpp"
#include "twinswarm/engine.hpp"

namespace twinswarm {

struct RadiusAxis {
    std::vector<double> values;
};
struct PartnersAxis {
    std::vector<std::optional<std::size_t>> values;  ///< nullopt = all others
};
struct AgentCountAxis {
    std::vector<std::size_t> values;
};
struct SchemeAxis {
    std::vector<CommScheme> values;
};

using SweepAxis = std::variant<RadiusAxis, PartnersAxis, AgentCountAxis, SchemeAxis>;

struct BatchConfig {
    ScenarioConfig base;
    std::size_t num_runs{1};
    /// Cartesian product, first axis outermost. Empty = one specification.
    std::vector<SweepAxis> sweep;
    /// Optional threshold on final mean true distance for a "converged" flag.
    std::optional<double> convergence_epsilon;
};

/// Expands the sweep into validated specifications. Throws ConfigError when
/// an axis does not apply to the scheme it lands on (e.g. radius on cellular).
std::vector<ScenarioConfig> expand_specs(const BatchConfig& batch);

/// Seed of run `run_index` of specification `spec_index`.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t spec_index, std::size_t run_index);

struct CurvePoint {
    std::size_t round{0};
    double mean{0.0};
    double stddev{0.0};
    double std_error{0.0};
    std::size_t padded_runs{0};  ///< runs that had already terminated
};

struct SpecSummary {
    std::size_t spec_index{0};
    ScenarioConfig config;
    std::vector<CurvePoint> curve;  ///< mean_true_distance, rounds 0..max executed
    double mean_final_distance{0.0};
    double stddev_final_distance{0.0};
    double std_error_final_distance{0.0};
    double mean_rounds_executed{0.0};
    std::optional<double> converged_fraction;
};

struct BatchResult {
    std::vector<SpecSummary> specs;
    std::vector<std::vector<RunResult>> runs;  ///< runs[spec][run]
};

struct BatchOptions {
    /// Worker threads; 0 selects default_parallelism(). Results never depend
    /// on this value.
    std::size_t threads{0};
};

/// TWINSWARM_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
std::size_t default_parallelism();

/// Aggregates equally-weighted runs of one specification. Runs that stopped
/// early are carried forward at their final value and counted as padded.
SpecSummary summarize(std::size_t spec_index, const ScenarioConfig& config,
                      const std::vector<RunResult>& runs,
                      std::optional<double> convergence_epsilon = std::nullopt);

/// Runs every specification `num_runs` times. Errors are rethrown as
/// SimulationError tagged with the (spec, run) pair.
BatchResult run_batch(const BatchConfig& batch, const BatchOptions& options = {});

/// Reference run with the unmodified global-best update: every agent is
/// pulled towards the best record of the entire swarm, at zero communication
/// cost. The scheme and budget in `config` are ignored; placement, sensing and
/// motion draws use the same streams as run().
RunResult oracle_global_pso(const ScenarioConfig& config, const RoundObserver& observer = {});

}  // namespace twinswarm
