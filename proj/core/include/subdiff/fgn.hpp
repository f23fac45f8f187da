#pragma once

#include <cstdint>

#include "subdiff/types.hpp"

namespace subdiff {

/// Autocovariance of unit-variance fractional Gaussian noise at integer lag
/// k >= 0: gamma(k) = (|k+1|^2h + |k-1|^2h - 2|k|^2h) / 2. Valid for any
/// h in (0,1); gamma(0) = 1.
double fgn_autocovariance(Hurst h, long k);

/// Power-law memory kernel 2h(2h-1)|t|^(2h-2) of the long-memory GLE.
/// Requires 1/2 < h < 1 and t != 0 (the kernel diverges at the origin).
double memory_kernel(Hurst h, double t);

/// n unit-variance fGn samples whose exact grid autocovariance is
/// fgn_autocovariance. Deterministic in (h, n, seed); dt of the returned
/// trace is 1 (unit grid). Metadata records seed, h and the generator id.
Trace sample_fgn(Hurst h, std::size_t n, std::uint64_t seed);

/// Fractional Brownian motion on the grid t_k = k dt as the dt^h-scaled
/// partial sums of an fGn increment trace, so Var[B(t_k)] = t_k^(2h)
/// exactly. B(0) = 0 is prepended; h is read from the increment metadata.
Trace fbm_from_fgn(const Trace& increments, double dt);

} // namespace subdiff
