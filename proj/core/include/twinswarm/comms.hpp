#pragma once
/**
 * @file comms.hpp
 * @brief Who hears whom in a round, and what it costs in radio transmissions.
 *
 * Three schemes are modelled, all lossless:
 *
 *  - D2D: agent i inquires every agent within radius r of it (closed ball).
 *    Each ordered inquiry costs a request and a reply, so a round costs
 *    2 * sum_i |N_i|, i.e. 2I(I-1) when everyone is in range.
 *  - Cellular: each agent opens sessions with K distinct partners drawn
 *    uniformly at random every round. A session relays both agents' reports
 *    through the base station (uplink, downlink, response uplink, response
 *    downlink) and costs 4, so a round costs 4IK. Sessions i->j and j->i are
 *    both paid for.
 *  - Digital twin: every agent uplinks to its twin and receives one downlink
 *    decision; twins share everything at the edge server for free. A round
 *    costs 2I and every agent sees every other agent.
 *
 * Neighbor sets are computed on the round-start snapshot.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "twinswarm/geometry.hpp"
#include "twinswarm/pso.hpp"
#include "twinswarm/random.hpp"

namespace twinswarm {

struct D2D {
    double radius{0.0};
    friend bool operator==(const D2D&, const D2D&) = default;
};

struct Cellular {
    /// Partners per agent per round; nullopt means every other agent (I - 1).
    std::optional<std::size_t> partners;
    friend bool operator==(const Cellular&, const Cellular&) = default;
};

struct DigitalTwin {
    friend bool operator==(const DigitalTwin&, const DigitalTwin&) = default;
};

using CommScheme = std::variant<D2D, Cellular, DigitalTwin>;

/// "d2d", "cellular" or "digital_twin".
std::string scheme_name(const CommScheme& scheme);

/// Throws ConfigError when the scheme's parameters are out of bounds for a
/// swarm of `agent_count` agents (r > 0; explicit K in [1, I - 1]). Cellular
/// with all partners is accepted for a single agent and costs nothing.
void validate(const CommScheme& scheme, std::size_t agent_count);

/// Partners per agent for a cellular scheme, resolving "everyone" to I - 1.
std::size_t effective_partners(const Cellular& scheme, std::size_t agent_count);

/// Cost of a fully connected round: 2I(I-1), 4IK or 2I.
std::uint64_t worst_case_round_cost(const CommScheme& scheme, std::size_t agent_count);

/// What agent `i` exposes to the scheme at round start.
struct AgentSnapshot {
    Vec2 position;
    double est_distance{0.0};
};

struct RoundExchange {
    /// reports_for[i] holds every report delivered to agent i this round.
    std::vector<std::vector<Report>> reports_for;
    std::uint64_t radio_tx_count{0};
};

RoundExchange exchange_d2d(std::span<const AgentSnapshot> agents, double radius);

/// Partner draws consume `rng` in agent-id order. Throws ConfigError when K is
/// outside [1, I - 1], except that K = 0 is accepted for a single agent.
RoundExchange exchange_cellular(std::span<const AgentSnapshot> agents, std::size_t partners,
                                RngStream& rng);

RoundExchange exchange_digital_twin(std::span<const AgentSnapshot> agents);

/// Dispatches on the scheme. `rng` is only consumed by the cellular scheme.
RoundExchange exchange(const CommScheme& scheme, std::span<const AgentSnapshot> agents,
                       RngStream& rng);

}  // namespace twinswarm
