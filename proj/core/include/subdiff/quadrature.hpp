#pragma once

#include <functional>
#include <vector>

#include "subdiff/errors.hpp"

namespace subdiff {

using Integrand = std::function<double(double)>;

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
};

/// Options for the semi-infinite / oscillatory integrators.
struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_floor = 0.0;          // absolute error floor (0 = pure relative)
    double endpoint_exponent = 0.0;  // integrand ~ w^p as w -> 0+, p > -1
    double structure_scale = 1.0;    // where the integrand's features live
    double lower = 0.0;              // start of the integration range
    std::vector<double> breakpoints; // interior features (resonances, peaks)
    int max_panels = 20000;          // oscillatory half-period budget
    int max_intervals = 2000;        // adaptive GK interval budget per panel
};

/// Adaptive Gauss-Kronrod 7/15 on a finite interval. Worst-interval-first
/// refinement; interior peaks are fine, endpoint singularities are not.
QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              double rel_tol = 1e-10, double abs_floor = 0.0,
                              int max_intervals = 2000);

/// Integral over (0, a] of an integrand behaving like w^p (p > -1) at the
/// origin. The power substitution u = w^(p+1) removes the endpoint behavior
/// before handing off to the adaptive rule.
QuadResult integrate_endpoint(const Integrand& f, double a, double p,
                              double rel_tol = 1e-10, double abs_floor = 0.0,
                              int max_intervals = 2000);

/// Integral of f over (0, inf) for an eventually power-law-decaying f
/// (|f| ~ w^-q, q > 1). Geometric panels past the structure region with a
/// fitted power-law remainder.
QuadResult integrate_semi_infinite(const Integrand& f, const QuadOptions& opt);

/// Cosine transform: integral over (0, inf) of f(w) cos(t w) dw. For t = 0
/// this reduces to integrate_semi_infinite. For t > 0 the axis is cut at the
/// zeros of cos(t w); the alternating half-period series is summed directly
/// through the integrand's structure and then accelerated (Wynn epsilon).
QuadResult fourier_cos(const Integrand& f, double t, const QuadOptions& opt);

/// Sine transform counterpart; odd in t.
QuadResult fourier_sin(const Integrand& f, double t, const QuadOptions& opt);

/// Public oscillatory-quadrature entry point: integral over (0, inf) of
/// f(w) cos(t w) dw with an estimated relative error <= tol. Throws
/// AccuracyError (carrying the achieved estimate) when the refinement
/// budget is exhausted first.
double oscillatory_quadrature(const Integrand& f, double t, double tol,
                              double endpoint_exponent = 0.0,
                              double structure_scale = 1.0);

} // namespace subdiff
