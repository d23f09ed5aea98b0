#pragma once
/**
 * @file random.hpp
 * @brief Deterministic, platform-independent random streams.
 *
 * A stream is identified by a master seed plus a short path of integers
 * (run, agent, purpose, ...). The same path always produces the same draw
 * sequence on every platform: the engine is std::mt19937_64, whose output is
 * fixed by the standard, and all distributions are implemented here rather
 * than through the implementation-defined <random> distributions.
 */

#include <cstdint>
#include <initializer_list>
#include <random>

namespace twinswarm {

/// Mixes a master seed with a derivation path into a 64-bit stream seed.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}
    RngStream(std::uint64_t master, std::initializer_list<std::uint64_t> path)
        : engine_(derive_seed(master, path)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits. Consumes one 64-bit draw.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi). Consumes one draw.
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller. Always consumes exactly two draws and
    /// caches nothing, so stream alignment never depends on call history.
    double standard_normal();

    /// Uniform integer in [0, n) by rejection; n must be > 0.
    std::uint64_t uniform_below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

}  // namespace twinswarm
