#include "subdiff/fgn.hpp"

#include <cmath>
#include <string>

#include "subdiff/rng.hpp"
#include "subdiff/stationary.hpp"

namespace subdiff {

double fgn_autocovariance(Hurst h, long k) {
    if (k < 0) throw ParameterError("fGn autocovariance lag must be nonnegative");
    const double H2 = 2.0 * h.value();
    if (k == 0) return 1.0;
    if (k == 1) return 0.5 * (std::pow(2.0, H2) - 2.0);
    // second difference of k^(2h), written so the O(1/k) parts cancel in
    // expm1 instead of in the subtraction of large powers
    const double kk = static_cast<double>(k);
    const double a = H2 * std::log1p(1.0 / kk);
    const double b = H2 * std::log1p(-1.0 / kk);
    return 0.5 * std::pow(kk, H2) * (std::expm1(a) + std::expm1(b));
}

double memory_kernel(Hurst h, double t) {
    h.require_long_memory();
    if (t == 0.0) throw SingularityError("memory kernel diverges at t = 0");
    const double H2 = 2.0 * h.value();
    return H2 * (H2 - 1.0) * std::pow(std::abs(t), H2 - 2.0);
}

Trace sample_fgn(Hurst h, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw ParameterError("sample_fgn needs n >= 1");
    StationaryGaussianSampler sampler(
        [h](std::size_t j) { return fgn_autocovariance(h, static_cast<long>(j)); }, n);
    Rng rng(seed);
    std::vector<double> values = sampler.sample(rng);
    TraceMeta meta{{"seed", std::to_string(seed)},
                   {"h", std::to_string(h.value())},
                   {"generator", sampler.uses_fallback() ? "fgn-innovations" : "fgn-circulant"}};
    return Trace(1.0, std::move(values), 0.0, std::move(meta));
}

Trace fbm_from_fgn(const Trace& increments, double dt) {
    if (!(dt > 0.0)) throw ParameterError("fBm grid step must be positive");
    auto it = increments.meta().find("h");
    if (it == increments.meta().end())
        throw InputError("increment trace carries no Hurst metadata; expected sample_fgn output");
    const Hurst h(std::stod(it->second));
    const double scale = std::pow(dt, h.value());

    std::vector<double> path(increments.size() + 1);
    path[0] = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < increments.size(); ++i) {
        acc += increments.value(i);
        path[i + 1] = scale * acc;
    }
    TraceMeta meta = increments.meta();
    meta["generator"] = "fbm-partial-sums";
    return Trace(dt, std::move(path), 0.0, std::move(meta));
}

} // namespace subdiff
