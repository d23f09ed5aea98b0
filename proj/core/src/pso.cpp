#include "twinswarm/pso.hpp"

#include <cmath>
#include <string>

#include "twinswarm/errors.hpp"

namespace twinswarm {

void validate(const PsoCoefficients& coeffs) {
    if (!std::isfinite(coeffs.c1) || coeffs.c1 < 0.0) {
        throw ConfigError("c1 must be finite and >= 0, got " + std::to_string(coeffs.c1));
    }
    if (!std::isfinite(coeffs.c2) || coeffs.c2 < 0.0) {
        throw ConfigError("c2 must be finite and >= 0, got " + std::to_string(coeffs.c2));
    }
    if (coeffs.c1 == 0.0 && coeffs.c2 == 0.0) {
        throw ConfigError("c1 and c2 must not both be zero");
    }
}

AgentState make_agent(std::size_t id, const Vec2& position, double first_estimate) {
    AgentState agent;
    agent.id = id;
    agent.position = position;
    agent.personal_best = {position, first_estimate};
    agent.neighborhood_best = agent.personal_best;
    agent.last_estimate = first_estimate;
    return agent;
}

AgentState fuse_knowledge(AgentState self, std::span<const Report> reports) {
    if (self.last_estimate < self.personal_best.est_distance) {
        self.personal_best = {self.position, self.last_estimate};
    }

    // Best candidate this round, ordered by (estimate, sender id).
    const BestRecord* best = &self.personal_best;
    std::size_t best_sender = self.id;
    BestRecord from_report;
    for (const Report& report : reports) {
        if (!(report.est_distance >= 0.0) || !std::isfinite(report.est_distance) ||
            !is_finite(report.position)) {
            throw SimulationError("agent " + std::to_string(self.id) +
                                  " received a corrupted report from agent " +
                                  std::to_string(report.sender));
        }
        const bool better = report.est_distance < best->est_distance ||
                            (report.est_distance == best->est_distance && report.sender < best_sender);
        if (better) {
            from_report = {report.position, report.est_distance};
            best = &from_report;
            best_sender = report.sender;
        }
    }

    if (best->est_distance < self.neighborhood_best.est_distance) {
        self.neighborhood_best = *best;
    }
    return self;
}

double draw_coefficient(CoefficientDistribution distribution, RngStream& rng) {
    switch (distribution) {
        case CoefficientDistribution::StandardNormal:
            return rng.standard_normal();
        case CoefficientDistribution::Uniform01:
            break;
    }
    return rng.uniform01();
}

AgentState advance(AgentState self, const PsoCoefficients& coeffs, const SpeedLimit& limit,
                   double r1, double r2) {
    const Vec2 cognitive = (coeffs.c1 * r1) * (self.personal_best.position - self.position);
    const Vec2 social = (coeffs.c2 * r2) * (self.neighborhood_best.position - self.position);
    self.velocity = clamp_speed(self.velocity + cognitive + social, limit);
    self.position = self.position + self.velocity;
    return self;
}

AgentState step(AgentState self, const PsoCoefficients& coeffs, const SpeedLimit& limit,
                RngStream& rng) {
    const double r1 = draw_coefficient(coeffs.distribution, rng);
    const double r2 = draw_coefficient(coeffs.distribution, rng);
    return advance(std::move(self), coeffs, limit, r1, r2);
}

}  // namespace twinswarm
