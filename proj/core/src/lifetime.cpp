#include "subdiff/lifetime.hpp"

#include <cmath>

namespace subdiff {

Trace lifetime_map(const Trace& x, const LifetimeParams& lp) {
    lp.validate();
    std::vector<double> values(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        values[i] = lp.k0 * std::exp(lp.beta * (lp.x_eq + x.value(i)));
    TraceMeta meta = x.meta();
    meta["generator"] = "lifetime-map";
    meta["k0"] = std::to_string(lp.k0);
    meta["beta"] = std::to_string(lp.beta);
    meta["x_eq"] = std::to_string(lp.x_eq);
    return Trace(x.dt(), std::move(values), x.start_time(), std::move(meta));
}

double lognormal_moment(double A, const CovarianceFn& cov, std::span<const double> times) {
    const std::size_t n = times.size();
    if (n == 0) return 1.0;
    for (std::size_t i = 1; i < n; ++i)
        if (times[i] < times[i - 1]) throw InputError("lognormal moment times must be sorted");
    double s = 0.5 * static_cast<double>(n) * cov(0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += cov(times[j] - times[i]);
    return std::exp(A * A * s);
}

double lifetime_autocov(const LifetimeParams& lp, const CovarianceFn& cov, double t) {
    lp.validate();
    const double b2 = lp.beta * lp.beta;
    const double prefactor = lp.k0 * lp.k0 * std::exp(2.0 * lp.beta * lp.x_eq + b2 * cov(0.0));
    return prefactor * std::expm1(b2 * cov(t));
}

double three_step_corr(const LifetimeParams& lp, const CovarianceFn& cov, double t1, double t2) {
    lp.validate();
    if (t1 < 0.0 || t2 < 0.0) throw ParameterError("three-step lags must be nonnegative");
    const double b2 = lp.beta * lp.beta;
    const double c1 = cov(t1);
    const double c2 = cov(t2);
    const double c12 = cov(t1 + t2);
    const double prefactor =
        std::pow(lp.k0, 3) * std::exp(3.0 * lp.beta * lp.x_eq + 1.5 * b2 * cov(0.0));
    // brackets written as expm1 sums so the C_x -> 0 limit cancels exactly
    const double bracket = std::expm1(b2 * (c1 + c2 + c12)) - std::expm1(b2 * c1)
                           - std::expm1(b2 * c2) - std::expm1(b2 * c12);
    return prefactor * bracket;
}

double four_step_corr(const LifetimeParams& lp, const CovarianceFn& cov, double t1, double t2,
                      double t3) {
    lp.validate();
    if (t1 < 0.0 || t2 < 0.0 || t3 < 0.0)
        throw ParameterError("four-step lags must be nonnegative");
    const double b2 = lp.beta * lp.beta;
    const double c1 = cov(t1);
    const double c2 = cov(t2);
    const double c3 = cov(t3);
    const double c12 = cov(t1 + t2);
    const double c23 = cov(t2 + t3);
    const double c123 = cov(t1 + t2 + t3);
    const double prefactor =
        std::pow(lp.k0, 4) * std::exp(4.0 * lp.beta * lp.x_eq + 2.0 * b2 * cov(0.0));
    const double bracket = std::expm1(b2 * (c1 + c2 + c3 + c12 + c23 + c123))
                           - std::expm1(b2 * (c1 + c2 + c12))
                           - std::expm1(b2 * (c1 + c23 + c123))
                           - std::expm1(b2 * (c12 + c3 + c123))
                           - std::expm1(b2 * (c2 + c3 + c23))
                           + std::expm1(b2 * c1) + std::expm1(b2 * c2) + std::expm1(b2 * c3)
                           + std::expm1(b2 * c12) + std::expm1(b2 * c23) + std::expm1(b2 * c123);
    return prefactor * bracket;
}

std::vector<SymmetryPair> time_symmetry_pairs(const LifetimeParams& lp, const CovarianceFn& cov,
                                              std::span<const double> grid) {
    std::vector<SymmetryPair> pairs;
    pairs.reserve(grid.size());
    for (double t : grid) {
        if (!(t > 0.0)) throw ParameterError("time-symmetry grid must be positive");
        pairs.push_back({t, three_step_corr(lp, cov, t, 2.0 * t),
                         three_step_corr(lp, cov, 2.0 * t, t)});
    }
    return pairs;
}

} // namespace subdiff
