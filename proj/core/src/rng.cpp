#include "subdiff/rng.hpp"

#include <cmath>
#include <numbers>

namespace subdiff {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t path_index) {
    std::uint64_t state = seed;
    (void)splitmix64(state);
    state ^= 0x6a09e667f3bcc909ULL + path_index;
    return splitmix64(state);
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t path_index) {
    return Rng(substream_seed(seed, path_index));
}

double Rng::uniform() {
    // 53-bit mantissa in (0, 1]: never returns 0, so log() below is safe.
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

} // namespace subdiff
