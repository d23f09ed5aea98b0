#include "twinswarm/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "twinswarm/errors.hpp"
#include "twinswarm/random.hpp"
#include "twinswarm/sensing.hpp"

namespace twinswarm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Moments {
    double mean{0.0};
    double stddev{0.0};
    double std_error{0.0};
};

Moments moments(const std::vector<double>& xs) {
    Moments m;
    if (xs.empty()) {
        return m;
    }
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    const double n = static_cast<double>(xs.size());
    m.mean = sum / n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) {
            ss += (x - m.mean) * (x - m.mean);
        }
        m.stddev = std::sqrt(ss / (n - 1.0));
        m.std_error = m.stddev / std::sqrt(n);
    }
    return m;
}

void apply_axis_value(ScenarioConfig& spec, const SweepAxis& axis, std::size_t index) {
    std::visit(Overloaded{
                   [&](const RadiusAxis& a) {
                       auto* d2d = std::get_if<D2D>(&spec.scheme);
                       if (d2d == nullptr) {
                           throw ConfigError("sweep parameter radius needs scheme d2d, got " +
                                             scheme_name(spec.scheme));
                       }
                       d2d->radius = a.values[index];
                   },
                   [&](const PartnersAxis& a) {
                       auto* cell = std::get_if<Cellular>(&spec.scheme);
                       if (cell == nullptr) {
                           throw ConfigError("sweep parameter partners needs scheme cellular, got " +
                                             scheme_name(spec.scheme));
                       }
                       cell->partners = a.values[index];
                   },
                   [&](const AgentCountAxis& a) { spec.agent_count = a.values[index]; },
                   [&](const SchemeAxis& a) { spec.scheme = a.values[index]; },
               },
               axis);
}

std::size_t axis_size(const SweepAxis& axis) {
    return std::visit([](const auto& a) { return a.values.size(); }, axis);
}

}  // namespace

std::vector<ScenarioConfig> expand_specs(const BatchConfig& batch) {
    if (batch.num_runs < 1) {
        throw ConfigError("num_runs must be >= 1");
    }
    std::vector<ScenarioConfig> specs{batch.base};
    for (std::size_t a = 0; a < batch.sweep.size(); ++a) {
        const SweepAxis& axis = batch.sweep[a];
        if (axis_size(axis) == 0) {
            throw ConfigError("sweep[" + std::to_string(a) + "] has no values");
        }
        std::vector<ScenarioConfig> next;
        next.reserve(specs.size() * axis_size(axis));
        for (const ScenarioConfig& spec : specs) {
            for (std::size_t v = 0; v < axis_size(axis); ++v) {
                ScenarioConfig expanded = spec;
                apply_axis_value(expanded, axis, v);
                next.push_back(std::move(expanded));
            }
        }
        specs = std::move(next);
    }
    for (std::size_t s = 0; s < specs.size(); ++s) {
        try {
            validate(specs[s]);
        } catch (const ConfigError& e) {
            throw ConfigError("spec " + std::to_string(s) + ": " + e.what());
        }
    }
    return specs;
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t spec_index, std::size_t run_index) {
    return derive_seed(master_seed, {spec_index, run_index});
}

SpecSummary summarize(std::size_t spec_index, const ScenarioConfig& config,
                      const std::vector<RunResult>& runs, std::optional<double> convergence_epsilon) {
    SpecSummary summary;
    summary.spec_index = spec_index;
    summary.config = config;
    if (runs.empty()) {
        return summary;
    }

    std::size_t longest = 0;
    std::vector<double> finals;
    std::vector<double> executed;
    std::size_t converged = 0;
    for (const RunResult& r : runs) {
        longest = std::max(longest, r.rounds_executed);
        finals.push_back(r.final_metrics().mean_true_distance);
        executed.push_back(static_cast<double>(r.rounds_executed));
        if (convergence_epsilon && r.final_metrics().mean_true_distance <= *convergence_epsilon) {
            ++converged;
        }
    }

    std::vector<double> column(runs.size());
    summary.curve.reserve(longest + 1);
    for (std::size_t t = 0; t <= longest; ++t) {
        CurvePoint point;
        point.round = t;
        for (std::size_t k = 0; k < runs.size(); ++k) {
            const RunResult& r = runs[k];
            if (t == 0) {
                column[k] = r.initial.mean_true_distance;
            } else if (t <= r.rounds_executed) {
                column[k] = r.rounds[t - 1].mean_true_distance;
            } else {
                column[k] = r.final_metrics().mean_true_distance;
                ++point.padded_runs;
            }
        }
        const Moments m = moments(column);
        point.mean = m.mean;
        point.stddev = m.stddev;
        point.std_error = m.std_error;
        summary.curve.push_back(point);
    }

    const Moments f = moments(finals);
    summary.mean_final_distance = f.mean;
    summary.stddev_final_distance = f.stddev;
    summary.std_error_final_distance = f.std_error;
    summary.mean_rounds_executed = moments(executed).mean;
    if (convergence_epsilon) {
        summary.converged_fraction =
            static_cast<double>(converged) / static_cast<double>(runs.size());
    }
    return summary;
}

std::size_t default_parallelism() {
    if (const char* env = std::getenv("TWINSWARM_THREADS")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

BatchResult run_batch(const BatchConfig& batch, const BatchOptions& options) {
    const std::vector<ScenarioConfig> specs = expand_specs(batch);
    const std::size_t runs_per_spec = batch.num_runs;
    const std::size_t jobs = specs.size() * runs_per_spec;

    BatchResult result;
    result.runs.assign(specs.size(), std::vector<RunResult>(runs_per_spec));
    std::vector<std::exception_ptr> errors(jobs);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const std::size_t s = job / runs_per_spec;
            const std::size_t r = job % runs_per_spec;
            try {
                ScenarioConfig config = specs[s];
                config.master_seed = run_seed(batch.base.master_seed, s, r);
                result.runs[s][r] = run(config);
            } catch (...) {
                errors[job] = std::current_exception();
            }
        }
    };

    const std::size_t threads =
        std::min(jobs, options.threads == 0 ? default_parallelism() : options.threads);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t k = 0; k < threads; ++k) {
            pool.emplace_back(worker);
        }
    }

    // Report the lowest failing (spec, run) so errors are independent of scheduling.
    for (std::size_t job = 0; job < jobs; ++job) {
        if (!errors[job]) {
            continue;
        }
        const std::string tag = "spec " + std::to_string(job / runs_per_spec) + " run " +
                                std::to_string(job % runs_per_spec) + ": ";
        try {
            std::rethrow_exception(errors[job]);
        } catch (const std::exception& e) {
            throw SimulationError(tag + e.what());
        }
    }

    result.specs.reserve(specs.size());
    for (std::size_t s = 0; s < specs.size(); ++s) {
        result.specs.push_back(summarize(s, specs[s], result.runs[s], batch.convergence_epsilon));
    }
    return result;
}

RunResult oracle_global_pso(const ScenarioConfig& config, const RoundObserver& observer) {
    Swarm swarm = initialize(config);
    const RangeSensor sensor(config.sigma, config.target);
    const SpeedLimit limit(config.v_max);
    const double c1 = config.coeffs.c1;
    const double c2 = config.coeffs.c2;

    RunResult result;
    result.config_digest = config_digest(config);
    result.initial = measure_swarm(0, swarm.agents, config.target, 0);
    if (observer) {
        observer(RoundView{0, swarm.agents, nullptr, 0});
    }

    // Swarm-wide best so far; replaced only on a strictly smaller estimate,
    // scanning agents in id order.
    BestRecord global = swarm.agents.front().personal_best;
    auto refresh_global = [&] {
        for (const AgentState& a : swarm.agents) {
            if (a.personal_best.est_distance < global.est_distance) {
                global = a.personal_best;
            }
        }
    };
    refresh_global();

    for (std::size_t t = 1; t <= config.max_rounds; ++t) {
        for (AgentState& a : swarm.agents) {
            if (a.last_estimate < a.personal_best.est_distance) {
                a.personal_best = {a.position, a.last_estimate};
            }
        }
        refresh_global();

        for (std::size_t i = 0; i < swarm.agents.size(); ++i) {
            AgentState& a = swarm.agents[i];
            const double r1 = draw_coefficient(config.coeffs.distribution, swarm.motion[i]);
            const double r2 = draw_coefficient(config.coeffs.distribution, swarm.motion[i]);
            const Vec2 toward_own = a.personal_best.position - a.position;
            const Vec2 toward_swarm = global.position - a.position;
            const Vec2 raw = a.velocity + (c1 * r1) * toward_own + (c2 * r2) * toward_swarm;
            a.velocity = clamp_speed(raw, limit);
            a.position = a.position + a.velocity;
            a.neighborhood_best = global;
            a.last_estimate = sensor.measure(a.position, swarm.sensing[i]);
        }

        result.rounds.push_back(measure_swarm(t, swarm.agents, config.target, 0));
        if (observer) {
            observer(RoundView{t, swarm.agents, nullptr, 0});
        }
    }

    result.rounds_executed = result.rounds.size();
    result.termination = TerminationReason::RoundLimit;
    for (const AgentState& a : swarm.agents) {
        result.final_positions.push_back(a.position);
    }
    return result;
}

}  // namespace twinswarm
