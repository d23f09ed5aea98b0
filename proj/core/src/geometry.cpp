#include "twinswarm/geometry.hpp"

#include <cmath>
#include <string>

#include "twinswarm/errors.hpp"

namespace twinswarm {

namespace {
// A clamped vector can come out a rounding error above the limit; without
// this slack a second clamp would rescale it again.
constexpr double kClampSlack = 1e-12;
}  // namespace

SpeedLimit::SpeedLimit(double v_max) : v_max_(v_max) {
    if (!std::isfinite(v_max) || v_max <= 0.0) {
        throw ConfigError("v_max must be finite and > 0, got " + std::to_string(v_max));
    }
}

double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

Vec2 clamp_speed(const Vec2& v, const SpeedLimit& limit) {
    const double speed = v.norm();
    if (speed <= limit.value() * (1.0 + kClampSlack)) {
        return v;
    }
    return v * (limit.value() / speed);
}

}  // namespace twinswarm
