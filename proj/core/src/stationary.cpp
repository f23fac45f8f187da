#include "subdiff/stationary.hpp"

#include <cmath>
#include <complex>

#include "subdiff/errors.hpp"
#include "subdiff/fft.hpp"

namespace subdiff {

StationaryGaussianSampler::StationaryGaussianSampler(
    const std::function<double(std::size_t)>& cov, std::size_t n)
    : n_(n) {
    if (n_ == 0) throw ParameterError("sample length must be at least 1");
    if (n_ == 1) {
        ring_ = 1;
        const double g0 = cov(0);
        if (!(g0 >= 0.0)) throw InfeasibleGridError("negative variance at lag 0");
        sqrt_eig_.assign(1, std::sqrt(g0));
        return;
    }

    ring_ = next_pow2(2 * (n_ - 1));
    std::vector<std::complex<double>> c(ring_);
    for (std::size_t j = 0; j <= ring_ / 2; ++j) {
        const double v = cov(j);
        c[j] = v;
        if (j > 0 && j < ring_ / 2) c[ring_ - j] = v;
    }
    fft(c);

    double max_eig = 0.0;
    double min_eig = 0.0;
    for (const auto& e : c) {
        max_eig = std::max(max_eig, e.real());
        min_eig = std::min(min_eig, e.real());
    }
    min_eig_ = min_eig;

    if (min_eig < -1e-9 * max_eig) {
        if (n_ > kFallbackLimit)
            throw InfeasibleGridError(
                "covariance embedding has a negative spectrum (min eigenvalue "
                + std::to_string(min_eig) + ") and the grid is too large for the dense "
                "fallback; try a smaller n*dt window");
        fallback_ = true;
        gamma_.resize(n_);
        for (std::size_t j = 0; j < n_; ++j) gamma_[j] = cov(j);
        if (!(gamma_[0] > 0.0)) throw InfeasibleGridError("nonpositive variance at lag 0");
        return;
    }

    sqrt_eig_.resize(ring_);
    for (std::size_t k = 0; k < ring_; ++k)
        sqrt_eig_[k] = std::sqrt(std::max(0.0, c[k].real()));
}

std::vector<double> StationaryGaussianSampler::sample(Rng& rng) const {
    if (n_ == 1) return {sqrt_eig_[0] * rng.normal()};
    if (fallback_) return innovations_sample(rng);

    const std::size_t M = ring_;
    std::vector<std::complex<double>> w(M);
    // fixed draw order: W_0, W_{M/2}, then the conjugate pairs
    w[0] = sqrt_eig_[0] * rng.normal();
    w[M / 2] = sqrt_eig_[M / 2] * rng.normal();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 1; k < M / 2; ++k) {
        const double a = rng.normal();
        const double b = rng.normal();
        const std::complex<double> v(a * inv_sqrt2, b * inv_sqrt2);
        w[k] = sqrt_eig_[k] * v;
        w[M - k] = sqrt_eig_[k] * std::conj(v);
    }
    fft(w);
    const double norm = 1.0 / std::sqrt(static_cast<double>(M));
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = w[i].real() * norm;
    return out;
}

// Levinson-Durbin innovations sampling: draws x_k from its exact conditional
// law given x_0..x_{k-1}, updating the predictor row in place.
std::vector<double> StationaryGaussianSampler::innovations_sample(Rng& rng) const {
    const std::size_t n = n_;
    std::vector<double> x(n);
    std::vector<double> phi(n, 0.0), phi_prev(n, 0.0);
    double v = gamma_[0];
    x[0] = std::sqrt(v) * rng.normal();
    for (std::size_t k = 1; k < n; ++k) {
        double acc = gamma_[k];
        for (std::size_t j = 1; j < k; ++j) acc -= phi_prev[j] * gamma_[k - j];
        const double refl = acc / v;
        phi[k] = refl;
        for (std::size_t j = 1; j < k; ++j) phi[j] = phi_prev[j] - refl * phi_prev[k - j];
        v *= (1.0 - refl * refl);
        if (!(v > 0.0))
            throw InfeasibleGridError("covariance sequence is not positive definite at step "
                                      + std::to_string(k));
        double mean = 0.0;
        for (std::size_t j = 1; j <= k; ++j) mean += phi[j] * x[k - j];
        x[k] = mean + std::sqrt(v) * rng.normal();
        std::swap(phi, phi_prev);
    }
    return x;
}

} // namespace subdiff
