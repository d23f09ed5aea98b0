#include "twinswarm/random.hpp"

#include <cmath>
#include <numbers>

namespace twinswarm {

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix64(master);
    std::uint64_t depth = 0;
    for (std::uint64_t key : path) {
        ++depth;
        h = mix64(h ^ mix64(key + depth * 0x632be59bd9b4e019ULL));
    }
    return h;
}

double RngStream::standard_normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
    // 2^64 mod n; draws below it would bias the modulo.
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x >= threshold) {
            return x % n;
        }
    }
}

}  // namespace twinswarm
