#include "twinswarm/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twinswarm/errors.hpp"

namespace twinswarm {

RangeSensor::RangeSensor(double sigma, Vec2 target) : sigma_(sigma), target_(target) {
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw ConfigError("sigma must be finite and >= 0, got " + std::to_string(sigma));
    }
    if (!is_finite(target)) {
        throw ConfigError("target must be finite");
    }
}

double RangeSensor::measure(const Vec2& p, RngStream& rng) const {
    const double error = sigma_ * rng.standard_normal();
    return std::max(0.0, distance(p, target_) + error);
}

}  // namespace twinswarm
