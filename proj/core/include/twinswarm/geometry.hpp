#pragma once
/**
 * @file geometry.hpp
 * @brief Planar vectors, Euclidean distance and the per-round speed clamp.
 *
 * All quantities are in meters (positions) or meters per round (velocities).
 * Every function here is pure and safe to call concurrently.
 */

#include <cmath>

namespace twinswarm {

struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }

    constexpr Vec2& operator+=(const Vec2& r) {
        x += r.x;
        y += r.y;
        return *this;
    }

    double norm() const { return std::sqrt(x * x + y * y); }

    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Maximum distance an agent may travel in one round. Always strictly positive.
class SpeedLimit {
public:
    /// Throws ConfigError unless v_max is finite and > 0.
    explicit SpeedLimit(double v_max);

    double value() const { return v_max_; }

private:
    double v_max_;
};

/// Euclidean distance |a - b|.
double distance(const Vec2& a, const Vec2& b);

/// Rescales v onto the speed limit when it is faster, keeping its direction.
/// Vectors at or below the limit, including the zero vector, pass through
/// unchanged.
Vec2 clamp_speed(const Vec2& v, const SpeedLimit& limit);

}  // namespace twinswarm
