#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace subdiff {

/// In-place radix-2 FFT. Length must be a power of two. `inverse` applies
/// the conjugate transform without the 1/n normalization.
void fft(std::vector<std::complex<double>>& a, bool inverse = false);

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

} // namespace subdiff
