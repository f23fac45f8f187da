#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "subdiff/rng.hpp"

namespace subdiff {

/// Exact sampler for a stationary Gaussian sequence with a prescribed
/// autocovariance on a uniform grid. The covariance sequence is embedded in
/// a circulant ring of power-of-two length; the ring spectrum is factored
/// once and reused across ensemble members. Falls back to an O(n^2)
/// innovations (Levinson-Durbin) sampler when the embedding picks up a
/// negative eigenvalue beyond tolerance and n is small enough to afford it.
class StationaryGaussianSampler {
public:
    /// cov(j) must supply autocovariance values for lags j = 0 .. ring/2,
    /// where ring = next_pow2(2 (n-1)).
    StationaryGaussianSampler(const std::function<double(std::size_t)>& cov, std::size_t n);

    /// One realization of length n. Thread-safe: the sampler is immutable
    /// after construction and each caller brings its own Rng.
    std::vector<double> sample(Rng& rng) const;

    std::size_t size() const { return n_; }
    std::size_t ring_size() const { return ring_; }
    bool uses_fallback() const { return fallback_; }
    double min_eigenvalue() const { return min_eig_; }

    /// Dense-path size cap; embeddings that fail beyond this length raise
    /// InfeasibleGridError instead.
    static constexpr std::size_t kFallbackLimit = 4096;

private:
    std::vector<double> innovations_sample(Rng& rng) const;

    std::size_t n_ = 0;
    std::size_t ring_ = 0;
    bool fallback_ = false;
    double min_eig_ = 0.0;
    std::vector<double> sqrt_eig_;       // embedding path
    std::vector<double> gamma_;          // fallback path: covariance lags 0..n-1
    std::vector<std::vector<double>> phi_; // fallback: per-step prediction coefficients
    std::vector<double> sigma_;          // fallback: innovation standard deviations
};

} // namespace subdiff
