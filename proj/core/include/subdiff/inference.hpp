#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "subdiff/types.hpp"

namespace subdiff {

/// Biased (divisor n) autocovariance of a trace; the positive-semidefinite
/// convention needed by the Laplace and fitting steps downstream.
CovarianceCurve empirical_autocorrelation(const Trace& trace, std::size_t max_lag);

/// Best fit of the overdamped lifetime-autocorrelation model to an empirical
/// curve, in the three shape parameters (h, zeta/(m psi), beta^2 kbt/(m psi)).
struct FitResult {
    double h = 0.0;
    double ratio = 0.0;       // zeta / (m psi)
    double amplitude = 0.0;   // beta^2 kbt / (m psi)
    double residual_norm = 0.0;
    bool converged = false;
    std::array<double, 9> covariance{}; // row-major 3x3, order (h, ratio, amplitude)
};

struct FitOptions {
    std::vector<double> h_starts = {0.55, 0.65, 0.75, 0.85, 0.95};
    int max_iterations = 200;
    double step_tol = 1e-12;
};

/// Damped Gauss-Newton least squares on the variance-normalized curve with
/// uniform weights, multi-started over an h grid. Non-convergence comes back
/// flagged, not thrown; a flat curve is ill-posed and throws InputError.
FitResult fit_overdamped_model(const CovarianceCurve& lambda_autocov,
                               const FitOptions& options = {});

/// The normalized model autocorrelation the fit works with (exposed for
/// synthetic-data generation and plotting).
double overdamped_model_autocorrelation(double h, double ratio, double amplitude, double t);

/// Trapezoidal Laplace transform of a tabulated curve with a fitted
/// power-law tail correction beyond the last lag. Each s must lie in the
/// resolvable band [10/T_total, 1/(10 dt)].
LaplaceCurve laplace_transform_curve(const CovarianceCurve& curve, std::span<const double> s_grid);

/// Memory-kernel recovery in Laplace space from the displacement-covariance
/// transform: K(s) = (m psi / zeta) m psi c(s) / (kbt - m psi s c(s)).
LaplaceCurve recover_kernel(const LaplaceCurve& cov_laplace, const PhysicalParams& params);

/// Forward map (the inverse of recover_kernel): the covariance transform a
/// given kernel produces, c(s) = (kbt zeta / m psi) K(s) / (m psi + zeta s K(s)).
LaplaceCurve covariance_laplace_from_kernel(const LaplaceCurve& kernel, const PhysicalParams& params);

struct PotentialCurve {
    std::vector<double> x;
    std::vector<double> u;
};

/// Boltzmann inversion U(x) = -kbt log P(x) from the histogram of a trace on
/// equal-width bins spanning mean +- 4 SD; shifted so min U = 0, empty bins
/// dropped. n_bins = 0 picks the Freedman-Diaconis width.
PotentialCurve reconstruct_potential(const Trace& trace, std::size_t n_bins, double kbt);

/// Least-squares quadratic fit y ~ c0 + c1 x + c2 x^2; returns {c0, c1, c2}.
std::array<double, 3> fit_quadratic(std::span<const double> x, std::span<const double> y);

struct HurstEstimate {
    double h = 0.0;
    double std_error = 0.0;
    double slope = 0.0;
    bool boundary = false; // H at or below the Brownian edge of the model range
};

/// Log-log regression of an ensemble MSD curve over its asymptotic window
/// (by default the last 1.5 decades of lags); H = 1 - slope/2.
HurstEstimate estimate_hurst_msd(const CovarianceCurve& msd, double window_decades = 1.5);

} // namespace subdiff
