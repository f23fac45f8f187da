#pragma once

#include <cstdint>
#include <random>

namespace subdiff {

/// SplitMix64 scrambling step; used to derive substream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of the independent substream for ensemble member `path_index`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t path_index);

/// Deterministic random stream. All randomness in the library flows through
/// this class: a std::mt19937_64 engine (bit-exact across platforms by the
/// standard) with a polar-free Box-Muller normal on top, so that a (seed,
/// path) pair fully determines every sample drawn.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Independent substream for one ensemble member: the stream seed is a
    /// SplitMix64 hash of (seed, path_index), so paths can be generated in
    /// any order or thread and still reproduce bit-identically.
    static Rng substream(std::uint64_t seed, std::uint64_t path_index);

    /// Uniform on (0, 1].
    double uniform();

    /// Standard normal.
    double normal();

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace subdiff
