#pragma once

#include <complex>

#include "subdiff/types.hpp"

namespace subdiff {

/// 1/Gamma(x) for any real x; exactly 0 at the poles x = 0, -1, -2, ...
double recip_gamma(double x);

/// Mittag-Leffler function E_alpha(z) for alpha in (0,1] on the completely
/// monotone branch z <= 0. Relative accuracy target 1e-10.
double mittag_leffler(double alpha, double z);

/// Full-line Fourier transform of the power-law memory kernel:
/// 2 Gamma(2h+1) sin(h pi) |omega|^(1-2h). Requires 1/2 < h < 1, omega != 0.
double kernel_fourier_full(Hurst h, double omega);

/// Half-line Fourier transform of the memory kernel:
/// Gamma(2h+1) |omega|^(1-2h) [sin(h pi) - i cos(h pi) sign(omega)].
std::complex<double> kernel_fourier_half(Hurst h, double omega);

/// Laplace transform of the memory kernel: Gamma(2h+1) s^(1-2h), s > 0.
double kernel_laplace(Hurst h, double s);

} // namespace subdiff
