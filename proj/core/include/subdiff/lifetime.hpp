#pragma once

#include <functional>
#include <span>
#include <vector>

#include "subdiff/types.hpp"

namespace subdiff {

/// Exponential distance-to-lifetime map lambda = k0 exp(beta (x_eq + x)).
struct LifetimeParams {
    double k0 = 1.0;
    double beta = 1.0;
    double x_eq = 0.0;

    void validate() const {
        if (!(k0 > 0.0)) throw ParameterError("lifetime rate prefactor k0 must be positive");
    }
};

/// Stationary covariance evaluator C_x(t); must be even in t.
using CovarianceFn = std::function<double(double)>;

/// Pointwise lifetime trace lambda_k = k0 exp(beta (x_eq + x_k)).
Trace lifetime_map(const Trace& x, const LifetimeParams& lp);

/// E[exp(A x(t_1)) ... exp(A x(t_n))] for a zero-mean stationary Gaussian x:
/// exp{ (n/2) A^2 C(0) + A^2 sum_{i<j} C(t_j - t_i) }. Times must be sorted.
double lognormal_moment(double A, const CovarianceFn& cov, std::span<const double> times);

/// Two-step centered autocovariance of the lifetime:
/// k0^2 exp(2 beta x_eq + beta^2 C(0)) (exp(beta^2 C(t)) - 1).
double lifetime_autocov(const LifetimeParams& lp, const CovarianceFn& cov, double t);

/// Three-step centered correlation E[dL(0) dL(t1) dL(t1+t2)].
double three_step_corr(const LifetimeParams& lp, const CovarianceFn& cov, double t1, double t2);

/// Four-step centered correlation E[dL(0) dL(t1) dL(t1+t2) dL(t1+t2+t3)].
double four_step_corr(const LifetimeParams& lp, const CovarianceFn& cov, double t1, double t2,
                      double t3);

struct SymmetryPair {
    double t;
    double left;  // E[dL(0) dL(t)  dL(3t)]
    double right; // E[dL(0) dL(2t) dL(3t)]
};

/// Lag-swap pairs (left, right) over a time grid; the closed forms make the
/// two columns identical, so the pairs fall on the diagonal exactly.
std::vector<SymmetryPair> time_symmetry_pairs(const LifetimeParams& lp, const CovarianceFn& cov,
                                              std::span<const double> grid);

} // namespace subdiff
