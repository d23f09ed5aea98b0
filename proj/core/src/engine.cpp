#include "twinswarm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "twinswarm/errors.hpp"

namespace twinswarm {

namespace {

std::uint64_t stream_path(StreamPurpose purpose) { return static_cast<std::uint64_t>(purpose); }

std::string hex(double v) {
    std::ostringstream os;
    os << std::hexfloat << v;
    return os.str();
}

}  // namespace

void validate(const ScenarioConfig& config) {
    if (!std::isfinite(config.map_width) || config.map_width <= 0.0) {
        throw ConfigError("map_width must be finite and > 0");
    }
    if (!std::isfinite(config.map_height) || config.map_height <= 0.0) {
        throw ConfigError("map_height must be finite and > 0");
    }
    if (!is_finite(config.target) || config.target.x < 0.0 || config.target.x > config.map_width ||
        config.target.y < 0.0 || config.target.y > config.map_height) {
        throw ConfigError("target must lie inside [0, map_width] x [0, map_height]");
    }
    if (config.agent_count < 1) {
        throw ConfigError("agent_count must be >= 1");
    }
    if (config.max_rounds < 1) {
        throw ConfigError("max_rounds must be >= 1");
    }
    if (config.tx_budget && *config.tx_budget < 1) {
        throw ConfigError("tx_budget must be >= 1 when set");
    }
    static_cast<void>(RangeSensor{config.sigma, config.target});
    static_cast<void>(SpeedLimit{config.v_max});
    validate(config.coeffs);
    validate(config.scheme, config.agent_count);
}

std::string canonical_string(const ScenarioConfig& c) {
    std::ostringstream os;
    os << "map=" << hex(c.map_width) << 'x' << hex(c.map_height) << ";target=" << hex(c.target.x)
       << ',' << hex(c.target.y) << ";agents=" << c.agent_count << ";sigma=" << hex(c.sigma)
       << ";v_max=" << hex(c.v_max) << ";c1=" << hex(c.coeffs.c1) << ";c2=" << hex(c.coeffs.c2)
       << ";r_dist="
       << (c.coeffs.distribution == CoefficientDistribution::Uniform01 ? "uniform" : "normal")
       << ";scheme=" << scheme_name(c.scheme);
    if (const auto* d2d = std::get_if<D2D>(&c.scheme)) {
        os << '(' << hex(d2d->radius) << ')';
    } else if (const auto* cell = std::get_if<Cellular>(&c.scheme)) {
        os << '(' << (cell->partners ? std::to_string(*cell->partners) : "all") << ')';
    }
    os << ";rounds=" << c.max_rounds
       << ";budget=" << (c.tx_budget ? std::to_string(*c.tx_budget) : "none")
       << ";budget_mode=" << (c.budget_mode == BudgetMode::Realized ? "realized" : "conservative")
       << ";seed=" << c.master_seed;
    return os.str();
}

std::uint64_t config_digest(const ScenarioConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_string(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

Swarm make_swarm(const ScenarioConfig& config, std::span<const Vec2> positions) {
    const RangeSensor sensor(config.sigma, config.target);
    Swarm swarm;
    swarm.agents.reserve(positions.size());
    swarm.sensing.reserve(positions.size());
    swarm.motion.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        swarm.sensing.emplace_back(config.master_seed,
                                   std::initializer_list<std::uint64_t>{
                                       stream_path(StreamPurpose::Sensing), i});
        swarm.motion.emplace_back(config.master_seed,
                                  std::initializer_list<std::uint64_t>{
                                      stream_path(StreamPurpose::Motion), i});
        swarm.agents.push_back(
            make_agent(i, positions[i], sensor.measure(positions[i], swarm.sensing.back())));
    }
    return swarm;
}

}  // namespace

Swarm initialize(const ScenarioConfig& config) {
    validate(config);
    RngStream placement(config.master_seed, {stream_path(StreamPurpose::Placement)});
    std::vector<Vec2> positions;
    positions.reserve(config.agent_count);
    for (std::size_t i = 0; i < config.agent_count; ++i) {
        const double x = placement.uniform(0.0, config.map_width);
        const double y = placement.uniform(0.0, config.map_height);
        positions.push_back({x, y});
    }
    return make_swarm(config, positions);
}

Swarm place(const ScenarioConfig& config, std::span<const Vec2> positions) {
    validate(config);
    if (positions.size() != config.agent_count) {
        throw ConfigError("place: expected " + std::to_string(config.agent_count) +
                          " positions, got " + std::to_string(positions.size()));
    }
    for (const Vec2& p : positions) {
        if (!is_finite(p)) {
            throw ConfigError("place: positions must be finite");
        }
    }
    return make_swarm(config, positions);
}

RoundMetrics measure_swarm(std::size_t round, std::span<const AgentState> agents,
                           const Vec2& target, std::uint64_t cumulative_tx) {
    RoundMetrics m;
    m.round = round;
    m.cumulative_tx = cumulative_tx;
    m.min_true_distance = std::numeric_limits<double>::infinity();
    m.swarm_best_est = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const AgentState& a : agents) {
        const double d = distance(a.position, target);
        sum += d;
        m.min_true_distance = std::min(m.min_true_distance, d);
        m.swarm_best_est = std::min(m.swarm_best_est, a.personal_best.est_distance);
    }
    m.mean_true_distance = agents.empty() ? 0.0 : sum / static_cast<double>(agents.size());
    return m;
}

std::string to_string(TerminationReason reason) {
    return reason == TerminationReason::RoundLimit ? "round-limit" : "budget-exhausted";
}

RunResult run(const ScenarioConfig& config, const RoundObserver& observer) {
    return run(config, initialize(config), observer);
}

RunResult run(const ScenarioConfig& config, Swarm swarm, const RoundObserver& observer) {
    validate(config);
    if (swarm.agents.size() != config.agent_count || swarm.sensing.size() != config.agent_count ||
        swarm.motion.size() != config.agent_count) {
        throw ConfigError("run: swarm size does not match agent_count");
    }
    const RangeSensor sensor(config.sigma, config.target);
    const SpeedLimit limit(config.v_max);
    const std::size_t n = config.agent_count;
    const std::uint64_t full_cost = worst_case_round_cost(config.scheme, n);

    RunResult result;
    result.config_digest = config_digest(config);
    result.initial = measure_swarm(0, swarm.agents, config.target, 0);
    result.rounds.reserve(config.max_rounds);
    if (observer) {
        observer(RoundView{0, swarm.agents, nullptr, 0});
    }

    std::uint64_t cumulative_tx = 0;
    std::vector<AgentSnapshot> snapshot(n);
    for (std::size_t t = 1; t <= config.max_rounds; ++t) {
        if (config.tx_budget && config.budget_mode == BudgetMode::Conservative &&
            cumulative_tx + full_cost > *config.tx_budget) {
            result.termination = TerminationReason::BudgetExhausted;
            break;
        }

        for (std::size_t i = 0; i < n; ++i) {
            snapshot[i] = {swarm.agents[i].position, swarm.agents[i].last_estimate};
        }
        RngStream comms_rng(config.master_seed, {stream_path(StreamPurpose::Comms), t});
        RoundExchange round = exchange(config.scheme, snapshot, comms_rng);

        if (config.tx_budget && cumulative_tx + round.radio_tx_count > *config.tx_budget) {
            result.termination = TerminationReason::BudgetExhausted;
            break;
        }
        cumulative_tx += round.radio_tx_count;

        // Fusion only reads the snapshot, so fusing then moving agent by
        // agent matches the two-phase barrier exactly.
        for (std::size_t i = 0; i < n; ++i) {
            AgentState& agent = swarm.agents[i];
            agent = fuse_knowledge(std::move(agent), round.reports_for[i]);
            agent = step(std::move(agent), config.coeffs, limit, swarm.motion[i]);
            agent.last_estimate = sensor.measure(agent.position, swarm.sensing[i]);
        }

        result.rounds.push_back(measure_swarm(t, swarm.agents, config.target, cumulative_tx));
        if (observer) {
            observer(RoundView{t, swarm.agents, &round, cumulative_tx});
        }
    }

    result.rounds_executed = result.rounds.size();
    result.final_positions.reserve(n);
    for (const AgentState& a : swarm.agents) {
        result.final_positions.push_back(a.position);
    }
    return result;
}

}  // namespace twinswarm
