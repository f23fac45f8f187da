#pragma once

#include "subdiff/types.hpp"

namespace subdiff {

/// The four stationary covariances of the harmonic model at one lag.
struct HarmonicCovariances {
    double xx;
    double xv;
    double vx;
    double vv;
};

/// Stationary velocity spectral density of the free-particle GLE:
/// kbt zeta Ktilde(w) / |zeta Ktilde+(w) - i m w|^2. Free params, w != 0.
double velocity_spectral_density(const PhysicalParams& p, Hurst h, double omega);

/// Stationary velocity autocovariance C_v(t) as the cosine transform of the
/// spectral density; C_v(0) = kbt/m within the quadrature tolerance.
double velocity_autocovariance(const PhysicalParams& p, Hurst h, double t,
                               double rel_tol = 1e-8);

/// Free-particle mean squared displacement
/// (2/pi) int (1 - cos(t w)) C~_v(w) / w^2 dw; 0 at t = 0, nondecreasing.
double msd_free(const PhysicalParams& p, Hurst h, double t, double rel_tol = 1e-8);

/// Long-time subdiffusive MSD law:
/// (kbt/zeta) sin(2h pi) / (pi h (1-2h)(2-2h)) t^(2-2h), strictly positive.
double msd_asymptote(const PhysicalParams& p, Hurst h, double t);

/// The four covariances of the harmonic model by cosine/sine transforms of
/// the spectral quotients. xv and vx are evaluated from the same printed
/// integrand (they coincide); both vanish at t = 0.
HarmonicCovariances harmonic_covariances(const PhysicalParams& p, Hurst h, double t,
                                         double rel_tol = 1e-8);

/// Overdamped time constant tau = (zeta Gamma(2h+1) / (m psi))^(1/(2-2h)).
double relaxation_time(const PhysicalParams& p, Hurst h);

/// Overdamped displacement autocovariance
/// (kbt/(m psi)) E_{2-2h}(-(t/tau)^(2-2h)).
double overdamped_autocovariance(const PhysicalParams& p, Hurst h, double t);

/// Overdamped displacement spectral density, w > 0:
/// (kbt/(m psi)) 2 sin(h pi) (tau w)^(2-2h) / w
///            / (1 - 2 cos(h pi)(tau w)^(2-2h) + (tau w)^(4-4h)).
double overdamped_spectral_density(const PhysicalParams& p, Hurst h, double omega);

} // namespace subdiff
