#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "subdiff/types.hpp"

namespace subdiff {

enum class Regime { free, harmonic, overdamped };

/// One simulation job: model selector plus grid and seed. All three regimes
/// produce exactly stationary Gaussian paths synthesized from the analytic
/// second-order structure (no time-stepping, no discretization bias).
struct SimRequest {
    PhysicalParams params;
    Hurst h = Hurst(0.75);
    Regime regime = Regime::overdamped;
    std::size_t n = 0;
    double dt = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Stationary displacement trace of the overdamped harmonic model; the exact
/// grid autocovariance is the Mittag-Leffler curve.
Trace simulate_overdamped(const SimRequest& req);

/// Stationary velocity trace of the free-particle model; the exact grid
/// autocovariance is the tabulated cosine-transform curve.
Trace simulate_free_velocity(const SimRequest& req);

/// Jointly Gaussian (x, v) pair for the harmonic model: dense block-covariance
/// factorization up to n = 4096, spectral synthesis with a band-limited
/// derivative for larger grids.
std::pair<Trace, Trace> simulate_harmonic(const SimRequest& req);

/// Independent ensemble paths (substream seeds hash(seed, path)); regimes
/// free and overdamped. Parallelizes over paths with deterministic output.
std::vector<Trace> simulate_ensemble(const SimRequest& req, std::size_t paths);

/// Cumulative trapezoidal integral of a velocity trace, x(0) = 0.
Trace displacement_from_velocity(const Trace& v);

/// Pointwise mean of x^2(t_k) over an ensemble with a standard-error band.
CovarianceCurve ensemble_msd(const std::vector<Trace>& displacements);

} // namespace subdiff
