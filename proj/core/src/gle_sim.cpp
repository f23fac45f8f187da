#include "subdiff/gle_sim.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

#include "subdiff/analytic.hpp"
#include "subdiff/fft.hpp"
#include "subdiff/parallel.hpp"
#include "subdiff/rng.hpp"
#include "subdiff/spline.hpp"
#include "subdiff/stationary.hpp"

namespace subdiff {

namespace {

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::free: return "free";
        case Regime::harmonic: return "harmonic";
        case Regime::overdamped: return "overdamped";
    }
    return "?";
}

TraceMeta base_meta(const SimRequest& req, const char* generator) {
    TraceMeta meta{{"seed", std::to_string(req.seed)},
                   {"h", std::to_string(req.h.value())},
                   {"dt", std::to_string(req.dt)},
                   {"regime", regime_name(req.regime)},
                   {"generator", generator},
                   {"m", std::to_string(req.params.mass)},
                   {"zeta", std::to_string(req.params.friction)},
                   {"kbt", std::to_string(req.params.kbt)}};
    if (req.params.potential) meta["psi"] = std::to_string(*req.params.potential);
    return meta;
}

// Velocity autocovariance tabulated at log-spaced lags and interpolated in
// log t; one spline serves every ring lag of the embedding.
class VelocityCovarianceTable {
public:
    VelocityCovarianceTable(const PhysicalParams& p, Hurst h, double dt, double t_max) {
        c0_ = velocity_autocovariance(p, h, 0.0, 1e-9);
        const double lo = std::log(dt);
        const double hi = std::log(std::max(t_max, dt * (1.0 + 1e-9)));
        const double decades = (hi - lo) / std::numbers::ln10;
        const std::size_t knots = std::max<std::size_t>(17, static_cast<std::size_t>(64.0 * decades) + 1);
        std::vector<double> xs(knots), ys(knots);
        for (std::size_t i = 0; i < knots; ++i)
            xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(knots - 1);
        parallel_for(knots, [&](std::size_t i) {
            ys[i] = velocity_autocovariance(p, h, std::exp(xs[i]), 1e-8);
        });
        spline_.emplace(std::move(xs), std::move(ys));
    }

    double at_lag(double t) const {
        if (t <= 0.0) return c0_;
        return (*spline_)(std::log(t));
    }
    double variance() const { return c0_; }

private:
    double c0_;
    std::optional<CubicSpline> spline_;
};

std::vector<std::vector<double>> run_paths(const StationaryGaussianSampler& sampler,
                                           std::uint64_t seed, std::size_t paths) {
    std::vector<std::vector<double>> out(paths);
    parallel_for(paths, [&](std::size_t i) {
        Rng rng = Rng::substream(seed, i);
        out[i] = sampler.sample(rng);
    });
    return out;
}

} // namespace

void SimRequest::validate() const {
    if (n < 2) throw ParameterError("simulation needs n >= 2");
    if (!(dt > 0.0)) throw ParameterError("simulation needs dt > 0");
    h.require_long_memory();
    if (regime == Regime::free)
        params.require_free();
    else
        params.require_potential();
}

Trace simulate_overdamped(const SimRequest& req) {
    SimRequest r = req;
    r.regime = Regime::overdamped;
    return std::move(simulate_ensemble(r, 1).front());
}

Trace simulate_free_velocity(const SimRequest& req) {
    SimRequest r = req;
    r.regime = Regime::free;
    return std::move(simulate_ensemble(r, 1).front());
}

std::vector<Trace> simulate_ensemble(const SimRequest& req, std::size_t paths) {
    req.validate();
    if (paths == 0) throw ParameterError("ensemble needs at least one path");
    if (req.regime == Regime::harmonic)
        throw ParameterError("harmonic ensembles go through simulate_harmonic");

    const std::size_t ring = next_pow2(2 * (req.n - 1));
    const std::size_t max_lag = ring / 2;

    std::vector<Trace> traces;
    traces.reserve(paths);

    if (req.regime == Regime::overdamped) {
        std::vector<double> cov(max_lag + 1);
        parallel_for(max_lag + 1, [&](std::size_t j) {
            cov[j] = overdamped_autocovariance(req.params, req.h,
                                               static_cast<double>(j) * req.dt);
        });
        StationaryGaussianSampler sampler([&cov](std::size_t j) { return cov[j]; }, req.n);
        auto values = run_paths(sampler, req.seed, paths);
        TraceMeta meta = base_meta(req, sampler.uses_fallback() ? "gle-innovations" : "gle-circulant");
        for (std::size_t i = 0; i < paths; ++i) {
            TraceMeta m = meta;
            m["path"] = std::to_string(i);
            traces.emplace_back(req.dt, std::move(values[i]), 0.0, std::move(m));
        }
        return traces;
    }

    // free-particle velocity
    VelocityCovarianceTable table(req.params, req.h, req.dt,
                                  static_cast<double>(max_lag) * req.dt);
    StationaryGaussianSampler sampler(
        [&](std::size_t j) { return table.at_lag(static_cast<double>(j) * req.dt); }, req.n);
    auto values = run_paths(sampler, req.seed, paths);
    TraceMeta meta = base_meta(req, sampler.uses_fallback() ? "gle-innovations" : "gle-circulant");
    for (std::size_t i = 0; i < paths; ++i) {
        TraceMeta m = meta;
        m["path"] = std::to_string(i);
        traces.emplace_back(req.dt, std::move(values[i]), 0.0, std::move(m));
    }
    return traces;
}

std::pair<Trace, Trace> simulate_harmonic(const SimRequest& req) {
    req.validate();
    if (req.regime != Regime::harmonic)
        throw ParameterError("simulate_harmonic needs regime = harmonic");

    const std::size_t n = req.n;
    Rng rng = Rng::substream(req.seed, 0);

    if (n <= StationaryGaussianSampler::kFallbackLimit) {
        // dense joint factorization of the (x, v) block covariance
        std::vector<double> xx(n), vv(n), xv(n);
        parallel_for(n, [&](std::size_t k) {
            HarmonicCovariances c =
                harmonic_covariances(req.params, req.h, static_cast<double>(k) * req.dt, 1e-7);
            xx[k] = c.xx;
            vv[k] = c.vv;
            xv[k] = c.xv;
        });

        const auto N = static_cast<Eigen::Index>(n);
        Eigen::MatrixXd sigma(2 * N, 2 * N);
        for (Eigen::Index i = 0; i < N; ++i) {
            for (Eigen::Index j = 0; j < N; ++j) {
                const auto lag = static_cast<std::size_t>(std::abs(i - j));
                sigma(i, j) = xx[lag];
                sigma(N + i, N + j) = vv[lag];
                const double cross = (j >= i ? 1.0 : -1.0) * xv[lag];
                sigma(i, N + j) = cross;
                sigma(N + j, i) = cross;
            }
        }

        const double scale = sigma.diagonal().maxCoeff();
        Eigen::LLT<Eigen::MatrixXd> llt;
        bool ok = false;
        for (double jitter : {0.0, 1e-12, 1e-10, 1e-8}) {
            Eigen::MatrixXd work = sigma;
            if (jitter > 0.0) work.diagonal().array() += jitter * scale;
            llt.compute(work);
            if (llt.info() == Eigen::Success) { ok = true; break; }
        }
        if (!ok)
            throw InfeasibleGridError("harmonic block covariance is not factorizable on this grid; "
                                      "try a smaller n*dt window");

        Eigen::VectorXd z(2 * N);
        for (Eigen::Index i = 0; i < 2 * N; ++i) z(i) = rng.normal();
        Eigen::VectorXd y = llt.matrixL() * z;

        std::vector<double> xs(n), vs(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = y(static_cast<Eigen::Index>(i));
            vs[i] = y(static_cast<Eigen::Index>(n + i));
        }
        TraceMeta mx = base_meta(req, "gle-harmonic-block");
        TraceMeta mv = mx;
        mx["observable"] = "x";
        mv["observable"] = "v";
        return {Trace(req.dt, std::move(xs), 0.0, std::move(mx)),
                Trace(req.dt, std::move(vs), 0.0, std::move(mv))};
    }

    // spectral synthesis: exact x marginal, v as the band-limited derivative
    const std::size_t ring = next_pow2(2 * (n - 1));
    const std::size_t max_lag = ring / 2;
    std::vector<double> xx(max_lag + 1);
    parallel_for(max_lag + 1, [&](std::size_t k) {
        xx[k] = harmonic_covariances(req.params, req.h, static_cast<double>(k) * req.dt, 1e-7).xx;
    });

    std::vector<std::complex<double>> c(ring);
    for (std::size_t j = 0; j <= max_lag; ++j) {
        c[j] = xx[j];
        if (j > 0 && j < max_lag) c[ring - j] = xx[j];
    }
    fft(c);
    double max_eig = 0.0;
    for (const auto& e : c) max_eig = std::max(max_eig, e.real());
    for (auto& e : c) {
        if (e.real() < -1e-9 * max_eig)
            throw InfeasibleGridError("harmonic spectral embedding is not nonnegative; "
                                      "try a smaller n*dt window");
        e = std::max(0.0, e.real());
    }

    std::vector<std::complex<double>> w(ring);
    w[0] = std::sqrt(c[0].real()) * rng.normal();
    w[ring / 2] = std::sqrt(c[ring / 2].real()) * rng.normal();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 1; k < ring / 2; ++k) {
        const double sd = std::sqrt(c[k].real());
        const std::complex<double> g(rng.normal() * inv_sqrt2, rng.normal() * inv_sqrt2);
        w[k] = sd * g;
        w[ring - k] = sd * std::conj(g);
    }

    std::vector<std::complex<double>> wd(ring);
    const double base = 2.0 * std::numbers::pi / (static_cast<double>(ring) * req.dt);
    for (std::size_t k = 0; k < ring; ++k) {
        double freq;
        if (k < ring / 2) freq = base * static_cast<double>(k);
        else if (k == ring / 2) freq = 0.0; // drop the unpaired Nyquist mode
        else freq = -base * static_cast<double>(ring - k);
        wd[k] = std::complex<double>(0.0, -freq) * w[k];
    }

    fft(w);
    fft(wd);
    const double norm = 1.0 / std::sqrt(static_cast<double>(ring));
    std::vector<double> xs(n), vs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = w[i].real() * norm;
        vs[i] = wd[i].real() * norm;
    }
    TraceMeta mx = base_meta(req, "gle-harmonic-spectral");
    TraceMeta mv = mx;
    mx["observable"] = "x";
    mv["observable"] = "v";
    return {Trace(req.dt, std::move(xs), 0.0, std::move(mx)),
            Trace(req.dt, std::move(vs), 0.0, std::move(mv))};
}

Trace displacement_from_velocity(const Trace& v) {
    const std::size_t n = v.size();
    std::vector<double> x(n);
    x[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        x[i] = x[i - 1] + 0.5 * v.dt() * (v.value(i - 1) + v.value(i));
    TraceMeta meta = v.meta();
    meta["generator"] = "trapezoid-displacement";
    return Trace(v.dt(), std::move(x), v.start_time(), std::move(meta));
}

CovarianceCurve ensemble_msd(const std::vector<Trace>& displacements) {
    if (displacements.size() < 2) throw InputError("ensemble MSD needs at least two traces");
    const Trace& first = displacements.front();
    for (const Trace& t : displacements) {
        if (t.size() != first.size() || t.dt() != first.dt()
            || t.start_time() != first.start_time())
            throw InputError("ensemble MSD: traces are not on a common grid");
    }
    const std::size_t n = first.size();
    const double paths = static_cast<double>(displacements.size());

    CovarianceCurve curve;
    curve.kind = CurveKind::displacement;
    curve.lags.resize(n);
    curve.values.resize(n);
    curve.sem.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double mean = 0.0;
        for (const Trace& t : displacements) mean += t.value(k) * t.value(k);
        mean /= paths;
        double var = 0.0;
        for (const Trace& t : displacements) {
            const double d = t.value(k) * t.value(k) - mean;
            var += d * d;
        }
        var /= paths * (paths - 1.0);
        curve.lags[k] = first.dt() * static_cast<double>(k);
        curve.values[k] = mean;
        curve.sem[k] = std::sqrt(var);
    }
    return curve;
}

} // namespace subdiff
