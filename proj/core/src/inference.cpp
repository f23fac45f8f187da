#include "subdiff/inference.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>

#include "subdiff/quadrature.hpp"
#include "subdiff/specfun.hpp"

namespace subdiff {

CovarianceCurve empirical_autocorrelation(const Trace& trace, std::size_t max_lag) {
    const std::size_t n = trace.size();
    if (max_lag >= n)
        throw InputError("autocorrelation max lag must be smaller than the trace length");
    double mean = 0.0;
    for (double v : trace.values()) mean += v;
    mean /= static_cast<double>(n);

    CovarianceCurve curve;
    curve.kind = CurveKind::displacement;
    curve.lags.resize(max_lag + 1);
    curve.values.resize(max_lag + 1);
    const auto& x = trace.values();
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) acc += (x[i] - mean) * (x[i + k] - mean);
        curve.lags[k] = trace.dt() * static_cast<double>(k);
        curve.values[k] = acc / static_cast<double>(n);
    }
    return curve;
}

double overdamped_model_autocorrelation(double h, double ratio, double amplitude, double t) {
    const double alpha = 2.0 - 2.0 * h;
    const double tau = std::pow(ratio * std::tgamma(2.0 * h + 1.0), 1.0 / alpha);
    const double e = mittag_leffler(alpha, -std::pow(t / tau, alpha));
    return std::expm1(amplitude * e) / std::expm1(amplitude);
}

namespace {

// parameter transform keeping h in (1/2, 1) and ratio/amplitude positive
struct FitTransform {
    static std::array<double, 3> to_params(const std::array<double, 3>& u) {
        return {0.5 + 0.5 / (1.0 + std::exp(-u[0])), std::exp(u[1]), std::exp(u[2])};
    }
    static std::array<double, 3> to_internal(double h, double ratio, double amplitude) {
        const double f = (h - 0.5) * 2.0; // in (0,1)
        return {std::log(f / (1.0 - f)), std::log(ratio), std::log(amplitude)};
    }
};

double residual_norm_sq(const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
}

} // namespace

FitResult fit_overdamped_model(const CovarianceCurve& curve, const FitOptions& options) {
    if (curve.lags.size() < 10) throw InputError("fit needs at least 10 lags");
    if (curve.lags.size() != curve.values.size())
        throw InputError("fit curve: lag/value size mismatch");
    if (!(curve.values[0] > 0.0))
        throw InputError("fit curve is ill-posed: nonpositive variance at lag 0");

    // variance-normalized target, lag 0 excluded (identically 1)
    std::vector<double> ts, ys;
    for (std::size_t i = 0; i < curve.lags.size(); ++i) {
        if (curve.lags[i] <= 0.0) continue;
        ts.push_back(curve.lags[i]);
        ys.push_back(curve.values[i] / curve.values[0]);
    }
    if (ts.size() < 6) throw InputError("fit needs at least 6 positive lags");
    const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    if (*ymax - *ymin < 1e-12)
        throw InputError("fit curve is ill-posed: normalized autocorrelation is flat");

    // crude time-scale initialization: first crossing of 1/2
    double t_half = ts.back();
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (ys[i] < 0.5) { t_half = ts[i]; break; }

    auto residuals = [&](const std::array<double, 3>& u, std::vector<double>& out) {
        const auto p = FitTransform::to_params(u);
        out.resize(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
            out[i] = overdamped_model_autocorrelation(p[0], p[1], p[2], ts[i]) - ys[i];
    };

    FitResult best;
    best.residual_norm = std::numeric_limits<double>::infinity();

    for (double h0 : options.h_starts) {
        const double alpha0 = 2.0 - 2.0 * h0;
        const double ratio0 = std::pow(t_half, alpha0) / std::tgamma(2.0 * h0 + 1.0);
        std::array<double, 3> u = FitTransform::to_internal(h0, ratio0, 1.0);

        std::vector<double> r, r_trial;
        residuals(u, r);
        double cost = residual_norm_sq(r);
        double damping = 1e-3;
        bool converged = false;
        Eigen::MatrixXd jac(static_cast<Eigen::Index>(ts.size()), 3);

        for (int iter = 0; iter < options.max_iterations; ++iter) {
            // central-difference Jacobian in the internal coordinates
            for (int c = 0; c < 3; ++c) {
                const double step = 1e-6 * std::max(1.0, std::abs(u[c]));
                auto up = u, dn = u;
                up[c] += step;
                dn[c] -= step;
                std::vector<double> rp, rm;
                residuals(up, rp);
                residuals(dn, rm);
                for (std::size_t i = 0; i < ts.size(); ++i)
                    jac(static_cast<Eigen::Index>(i), c) = (rp[i] - rm[i]) / (2.0 * step);
            }
            Eigen::Map<const Eigen::VectorXd> rv(r.data(), static_cast<Eigen::Index>(r.size()));
            const Eigen::Matrix3d jtj = jac.transpose() * jac;
            const Eigen::Vector3d jtr = jac.transpose() * rv;

            bool stepped = false;
            for (int attempt = 0; attempt < 12; ++attempt) {
                Eigen::Matrix3d m = jtj;
                m.diagonal() += damping * jtj.diagonal().cwiseMax(1e-12);
                const Eigen::Vector3d delta = m.ldlt().solve(-jtr);
                std::array<double, 3> u_trial = u;
                for (int c = 0; c < 3; ++c) u_trial[c] += delta(c);
                residuals(u_trial, r_trial);
                const double cost_trial = residual_norm_sq(r_trial);
                if (cost_trial < cost) {
                    const double step_norm = delta.cwiseAbs().maxCoeff();
                    u = u_trial;
                    r = r_trial;
                    const double improvement = cost - cost_trial;
                    cost = cost_trial;
                    damping = std::max(damping * 0.3, 1e-12);
                    stepped = true;
                    if (step_norm < options.step_tol || improvement < 1e-18 * (1.0 + cost))
                        converged = true;
                    break;
                }
                damping *= 10.0;
            }
            if (!stepped || converged) {
                converged = converged || !stepped;
                break;
            }
        }

        const auto p = FitTransform::to_params(u);
        const double norm = std::sqrt(cost);
        const bool better = norm < best.residual_norm - 1e-12
                            || (std::abs(norm - best.residual_norm) <= 1e-12 && p[0] < best.h);
        if (better) {
            best.h = p[0];
            best.ratio = p[1];
            best.amplitude = p[2];
            best.residual_norm = norm;
            best.converged = converged;

            // asymptotic covariance in the original parameters via the chain rule
            const Eigen::Matrix3d jtj = jac.transpose() * jac;
            const double dof = std::max<double>(1.0, static_cast<double>(ts.size()) - 3.0);
            const double s2 = cost / dof;
            Eigen::Matrix3d cov_internal = s2 * jtj.ldlt().solve(Eigen::Matrix3d::Identity());
            Eigen::Vector3d scale; // d(param)/d(internal)
            const double f = (p[0] - 0.5) * 2.0;
            scale << 0.5 * f * (1.0 - f), p[1], p[2];
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    best.covariance[static_cast<std::size_t>(3 * a + b)] =
                        cov_internal(a, b) * scale(a) * scale(b);
        }
    }
    return best;
}

LaplaceCurve laplace_transform_curve(const CovarianceCurve& curve, std::span<const double> s_grid) {
    const std::size_t n = curve.lags.size();
    if (n < 4 || curve.values.size() != n)
        throw InputError("Laplace transform needs a tabulated curve with >= 4 lags");
    for (std::size_t i = 1; i < n; ++i)
        if (!(curve.lags[i] > curve.lags[i - 1]))
            throw InputError("Laplace transform needs strictly increasing lags");
    const double dt = curve.lags[1] - curve.lags[0];
    const double t_total = curve.lags.back();
    const double s_lo = 10.0 / t_total;
    const double s_hi = 1.0 / (10.0 * dt);

    // power-law tail fit over the last decade of positive lags
    double tail_a = 0.0, tail_p = 0.0;
    bool have_tail = false;
    {
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < n; ++i) {
            if (curve.lags[i] >= 0.1 * t_total && curve.lags[i] > 0.0 && curve.values[i] > 0.0) {
                lx.push_back(std::log(curve.lags[i]));
                ly.push_back(std::log(curve.values[i]));
            }
        }
        if (lx.size() >= 5) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const double m = static_cast<double>(lx.size());
            for (std::size_t i = 0; i < lx.size(); ++i) {
                sx += lx[i];
                sy += ly[i];
                sxx += lx[i] * lx[i];
                sxy += lx[i] * ly[i];
            }
            const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            const double inter = (sy - slope * sx) / m;
            if (slope < -0.05 && slope > -4.0) {
                tail_p = -slope;
                tail_a = std::exp(inter);
                have_tail = true;
            }
        }
    }

    LaplaceCurve out;
    out.s.assign(s_grid.begin(), s_grid.end());
    out.values.resize(out.s.size());
    for (std::size_t k = 0; k < out.s.size(); ++k) {
        const double s = out.s[k];
        if (!(s >= s_lo && s <= s_hi))
            throw BandError("Laplace abscissa s = " + std::to_string(s)
                            + " outside the resolvable band [" + std::to_string(s_lo) + ", "
                            + std::to_string(s_hi) + "]");
        double acc = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            const double f0 = curve.values[i - 1] * std::exp(-s * curve.lags[i - 1]);
            const double f1 = curve.values[i] * std::exp(-s * curve.lags[i]);
            acc += 0.5 * (f0 + f1) * (curve.lags[i] - curve.lags[i - 1]);
        }
        if (have_tail) {
            auto tail = [&](double t) { return tail_a * std::pow(t, -tail_p) * std::exp(-s * t); };
            acc += integrate_adaptive(tail, t_total, t_total + 60.0 / s, 1e-10).value;
        }
        out.values[k] = acc;
    }
    out.validate();
    return out;
}

LaplaceCurve recover_kernel(const LaplaceCurve& cov_laplace, const PhysicalParams& params) {
    cov_laplace.validate();
    params.require_potential();
    const double mpsi = params.mass * params.psi();
    LaplaceCurve out;
    out.s = cov_laplace.s;
    out.values.resize(out.s.size());
    for (std::size_t i = 0; i < out.s.size(); ++i) {
        const double s = out.s[i];
        const double c = cov_laplace.values[i];
        const double denom = params.kbt - mpsi * s * c;
        if (std::abs(denom) <= 1e-9 * params.kbt)
            throw SingularRecoveryError("kernel recovery denominator vanishes at s = "
                                        + std::to_string(s));
        out.values[i] = (mpsi / params.friction) * mpsi * c / denom;
    }
    return out;
}

LaplaceCurve covariance_laplace_from_kernel(const LaplaceCurve& kernel,
                                            const PhysicalParams& params) {
    kernel.validate();
    params.require_potential();
    const double mpsi = params.mass * params.psi();
    LaplaceCurve out;
    out.s = kernel.s;
    out.values.resize(out.s.size());
    for (std::size_t i = 0; i < out.s.size(); ++i) {
        const double s = out.s[i];
        const double k = kernel.values[i];
        out.values[i] = (params.kbt * params.friction / mpsi) * k
                        / (mpsi + params.friction * s * k);
    }
    return out;
}

PotentialCurve reconstruct_potential(const Trace& trace, std::size_t n_bins, double kbt) {
    if (!(kbt > 0.0)) throw ParameterError("Boltzmann inversion needs kbt > 0");
    const std::size_t n = trace.size();
    if (n_bins != 0 && n_bins < 10) throw InputError("potential reconstruction needs >= 10 bins");

    double mean = 0.0;
    for (double v : trace.values()) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : trace.values()) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    const double sd = std::sqrt(var);
    if (!(sd > 0.0)) throw InputError("potential reconstruction: degenerate support (constant trace)");

    if (n_bins == 0) {
        // Freedman-Diaconis width from the interquartile range
        std::vector<double> sorted(trace.values());
        std::sort(sorted.begin(), sorted.end());
        const double q1 = sorted[sorted.size() / 4];
        const double q3 = sorted[(3 * sorted.size()) / 4];
        const double width = 2.0 * (q3 - q1) / std::cbrt(static_cast<double>(n));
        n_bins = width > 0.0 ? static_cast<std::size_t>(std::ceil(8.0 * sd / width)) : 10;
        n_bins = std::clamp<std::size_t>(n_bins, 10, 5000);
    }
    if (n < 10 * n_bins)
        throw InputError("potential reconstruction: too few points for " + std::to_string(n_bins)
                         + " bins");

    const double lo = mean - 4.0 * sd;
    const double hi = mean + 4.0 * sd;
    const double width = (hi - lo) / static_cast<double>(n_bins);
    std::vector<std::size_t> counts(n_bins, 0);
    std::size_t kept = 0;
    for (double v : trace.values()) {
        if (v < lo || v >= hi) continue;
        auto b = static_cast<std::size_t>((v - lo) / width);
        if (b >= n_bins) b = n_bins - 1;
        ++counts[b];
        ++kept;
    }
    if (kept == 0) throw InputError("potential reconstruction: no samples in range");

    PotentialCurve out;
    for (std::size_t b = 0; b < n_bins; ++b) {
        if (counts[b] == 0) continue;
        const double density = static_cast<double>(counts[b]) / (static_cast<double>(kept) * width);
        out.x.push_back(lo + (static_cast<double>(b) + 0.5) * width);
        out.u.push_back(-kbt * std::log(density));
    }
    const double umin = *std::min_element(out.u.begin(), out.u.end());
    for (double& u : out.u) u -= umin;
    return out;
}

std::array<double, 3> fit_quadratic(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3)
        throw InputError("quadratic fit needs >= 3 matching points");
    Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()), 3);
    Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        a(r, 0) = 1.0;
        a(r, 1) = x[i];
        a(r, 2) = x[i] * x[i];
        b(r) = y[i];
    }
    const Eigen::Vector3d c = (a.transpose() * a).ldlt().solve(a.transpose() * b);
    return {c(0), c(1), c(2)};
}

HurstEstimate estimate_hurst_msd(const CovarianceCurve& msd, double window_decades) {
    if (msd.lags.size() != msd.values.size() || msd.lags.size() < 4)
        throw InputError("Hurst estimation needs a tabulated MSD curve");
    double t_first = 0.0, t_last = 0.0;
    for (std::size_t i = 0; i < msd.lags.size(); ++i) {
        if (msd.lags[i] > 0.0 && msd.values[i] > 0.0) {
            if (t_first == 0.0) t_first = msd.lags[i];
            t_last = msd.lags[i];
        }
    }
    if (!(t_first > 0.0) || t_last / t_first < std::pow(10.0, 1.5))
        throw InputError("Hurst estimation needs an MSD curve spanning >= 1.5 decades");

    const double t_lo = t_last / std::pow(10.0, window_decades);
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < msd.lags.size(); ++i) {
        if (msd.lags[i] >= t_lo && msd.lags[i] > 0.0 && msd.values[i] > 0.0) {
            lx.push_back(std::log(msd.lags[i]));
            ly.push_back(std::log(msd.values[i]));
        }
    }
    if (lx.size() < 4) throw InputError("Hurst estimation: too few points in the asymptotic window");

    const double m = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double det = m * sxx - sx * sx;
    const double slope = (m * sxy - sx * sy) / det;
    const double inter = (sy - slope * sx) / m;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - inter - slope * lx[i];
        ss += r * r;
    }
    const double var_slope = lx.size() > 2 ? ss / (m - 2.0) * m / det : 0.0;

    HurstEstimate est;
    est.slope = slope;
    est.h = 1.0 - 0.5 * slope;
    est.std_error = 0.5 * std::sqrt(std::max(0.0, var_slope));
    est.boundary = est.h <= 0.505 || est.h >= 0.995;
    return est;
}

} // namespace subdiff
