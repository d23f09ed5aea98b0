#pragma once

#include "twinswarm/geometry.hpp"
#include "twinswarm/random.hpp"

namespace twinswarm {

/// Noisy range-to-target sensor. The estimate is the true distance plus one
/// zero-mean Gaussian error with standard deviation `sigma`, clamped at zero.
class RangeSensor {
public:
    /// Throws ConfigError if sigma is negative/non-finite or target non-finite.
    RangeSensor(double sigma, Vec2 target);

    double sigma() const { return sigma_; }
    const Vec2& target() const { return target_; }

    /// One range estimate from p. Advances rng by exactly one Gaussian sample,
    /// also when sigma == 0, so streams stay aligned across noise settings.
    double measure(const Vec2& p, RngStream& rng) const;

private:
    double sigma_;
    Vec2 target_;
};

}  // namespace twinswarm
