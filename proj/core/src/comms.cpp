#include "twinswarm/comms.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "twinswarm/errors.hpp"

namespace twinswarm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Report report_of(std::span<const AgentSnapshot> agents, std::size_t sender) {
    return {sender, agents[sender].position, agents[sender].est_distance};
}

}  // namespace

std::string scheme_name(const CommScheme& scheme) {
    return std::visit(Overloaded{
                          [](const D2D&) { return std::string("d2d"); },
                          [](const Cellular&) { return std::string("cellular"); },
                          [](const DigitalTwin&) { return std::string("digital_twin"); },
                      },
                      scheme);
}

void validate(const CommScheme& scheme, std::size_t agent_count) {
    if (const auto* d2d = std::get_if<D2D>(&scheme)) {
        if (!std::isfinite(d2d->radius) || d2d->radius <= 0.0) {
            throw ConfigError("scheme.radius must be finite and > 0, got " +
                              std::to_string(d2d->radius));
        }
    } else if (const auto* cell = std::get_if<Cellular>(&scheme)) {
        // "all" partners is valid for any swarm; a lone agent simply has no
        // sessions. An explicit K must be in [1, I - 1].
        if (cell->partners && (agent_count < 2 || *cell->partners < 1 ||
                               *cell->partners > agent_count - 1)) {
            throw ConfigError("scheme.partners must be in [1, " + std::to_string(agent_count - 1) +
                              "], got " + std::to_string(*cell->partners));
        }
    }
}

std::size_t effective_partners(const Cellular& scheme, std::size_t agent_count) {
    if (scheme.partners) {
        return *scheme.partners;
    }
    return agent_count == 0 ? 0 : agent_count - 1;
}

std::uint64_t worst_case_round_cost(const CommScheme& scheme, std::size_t agent_count) {
    const std::uint64_t n = agent_count;
    const std::uint64_t others = n == 0 ? 0 : n - 1;
    return std::visit(Overloaded{
                          [&](const D2D&) { return 2 * n * others; },
                          [&](const Cellular& c) {
                              return std::uint64_t{4} * n * effective_partners(c, agent_count);
                          },
                          [&](const DigitalTwin&) { return 2 * n; },
                      },
                      scheme);
}

RoundExchange exchange_d2d(std::span<const AgentSnapshot> agents, double radius) {
    RoundExchange out;
    out.reports_for.resize(agents.size());
    std::uint64_t inquiries = 0;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        for (std::size_t j = i + 1; j < agents.size(); ++j) {
            if (distance(agents[i].position, agents[j].position) <= radius) {
                out.reports_for[i].push_back(report_of(agents, j));
                out.reports_for[j].push_back(report_of(agents, i));
                inquiries += 2;
            }
        }
    }
    // Request plus reply per ordered inquiry.
    out.radio_tx_count = 2 * inquiries;
    return out;
}

RoundExchange exchange_cellular(std::span<const AgentSnapshot> agents, std::size_t partners,
                                RngStream& rng) {
    const std::size_t n = agents.size();
    const bool lone_agent = n == 1 && partners == 0;
    if (!lone_agent && (n < 2 || partners < 1 || partners > n - 1)) {
        throw ConfigError("cellular partners must be in [1, I - 1] for I = " + std::to_string(n) +
                          ", got " + std::to_string(partners));
    }
    RoundExchange out;
    out.reports_for.resize(n);
    if (lone_agent) {
        return out;
    }
    std::vector<std::size_t> others(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        // Candidates in id order, then a partial Fisher-Yates shuffle.
        std::size_t slot = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                others[slot++] = j;
            }
        }
        for (std::size_t k = 0; k < partners; ++k) {
            const std::size_t pick = k + rng.uniform_below(others.size() - k);
            std::swap(others[k], others[pick]);
            const std::size_t j = others[k];
            out.reports_for[i].push_back(report_of(agents, j));
            out.reports_for[j].push_back(report_of(agents, i));
        }
    }
    out.radio_tx_count = std::uint64_t{4} * n * partners;
    return out;
}

RoundExchange exchange_digital_twin(std::span<const AgentSnapshot> agents) {
    RoundExchange out;
    out.reports_for.resize(agents.size());
    for (std::size_t i = 0; i < agents.size(); ++i) {
        auto& reports = out.reports_for[i];
        reports.reserve(agents.size() - 1);
        for (std::size_t j = 0; j < agents.size(); ++j) {
            if (j != i) {
                reports.push_back(report_of(agents, j));
            }
        }
    }
    out.radio_tx_count = 2 * static_cast<std::uint64_t>(agents.size());
    return out;
}

RoundExchange exchange(const CommScheme& scheme, std::span<const AgentSnapshot> agents,
                       RngStream& rng) {
    return std::visit(Overloaded{
                          [&](const D2D& d) { return exchange_d2d(agents, d.radius); },
                          [&](const Cellular& c) {
                              return exchange_cellular(agents, effective_partners(c, agents.size()),
                                                       rng);
                          },
                          [&](const DigitalTwin&) { return exchange_digital_twin(agents); },
                      },
                      scheme);
}

}  // namespace twinswarm
