#include "subdiff/heatbath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "subdiff/fgn.hpp"
#include "subdiff/parallel.hpp"
#include "subdiff/rng.hpp"

namespace subdiff {

namespace {

constexpr double kPi = std::numbers::pi;

// G(t): the bath force on a frozen particle, linear in the Gibbs initial data
double bath_force_series(const HeatBathConfig& cfg, const SystemState& s0, double t) {
    double g = 0.0;
    for (std::size_t j = 0; j < cfg.n_osc; ++j) {
        const double w = cfg.omegas[j];
        const double gamma = cfg.gammas[j];
        const double d0 = s0.q[j] - gamma * s0.x / (w * w);
        g += cfg.m_b * gamma * d0 * std::cos(w * t) + (gamma / w) * s0.p_b[j] * std::sin(w * t);
    }
    return g;
}

} // namespace

void HeatBathConfig::validate() const {
    if (omegas.size() != n_osc || gammas.size() != n_osc)
        throw ParameterError("heat bath arrays do not match n_osc");
    if (!(m_b > 0.0)) throw ParameterError("bath particle mass must be positive");
    if (!(kbt > 0.0)) throw ParameterError("bath thermal energy must be positive");
    for (double w : omegas)
        if (!(w > 0.0)) throw ParameterError("bath frequencies must be positive");
    for (double g : gammas)
        if (!(g >= 0.0)) throw ParameterError("bath couplings must be nonnegative");
}

HeatBathConfig build_bath(Hurst h, std::size_t n_osc, double omega_min, double omega_max,
                          double m_b, double kbt, std::uint64_t seed, double zeta) {
    (void)seed;
    h.require_long_memory();
    if (n_osc < 1) throw ParameterError("bath needs at least one oscillator");
    if (!(omega_min > 0.0 && omega_max > omega_min))
        throw ParameterError("bath band needs 0 < omega_min < omega_max");
    if (!(m_b > 0.0 && kbt > 0.0 && zeta > 0.0))
        throw ParameterError("bath masses, temperature and friction must be positive");

    HeatBathConfig cfg;
    cfg.n_osc = n_osc;
    cfg.m_b = m_b;
    cfg.kbt = kbt;
    cfg.omega_min = omega_min;
    cfg.omega_max = omega_max;
    cfg.hurst = h.value();
    cfg.omegas.resize(n_osc);
    cfg.gammas.resize(n_osc);

    if (n_osc == 1) {
        cfg.omegas[0] = std::sqrt(omega_min * omega_max);
    } else {
        const double ratio = std::pow(omega_max / omega_min,
                                      1.0 / static_cast<double>(n_osc - 1));
        for (std::size_t j = 0; j < n_osc; ++j)
            cfg.omegas[j] = omega_min * std::pow(ratio, static_cast<double>(j));
        cfg.omegas.back() = omega_max;
    }

    std::vector<double> weights(n_osc, 1.0);
    if (n_osc > 1) {
        for (std::size_t j = 0; j < n_osc; ++j) {
            const double lo = j == 0 ? cfg.omegas[0] : cfg.omegas[j - 1];
            const double hi = j + 1 == n_osc ? cfg.omegas[j] : cfg.omegas[j + 1];
            weights[j] = 0.5 * (hi - lo);
        }
    }

    const double H2 = 2.0 * h.value();
    const double t0 = 1.0 / std::sqrt(omega_min * omega_max);
    double kernel_sum = 0.0;
    for (std::size_t j = 0; j < n_osc; ++j)
        kernel_sum += std::pow(cfg.omegas[j], 1.0 - H2) * weights[j] * std::cos(cfg.omegas[j] * t0);
    if (!(kernel_sum > 0.0))
        throw ParameterError("bath calibration failed: discrete kernel nonpositive at the reference lag");

    const double target = zeta * memory_kernel(h, t0);
    const double c = target / kernel_sum;
    cfg.zeta_calibration = c;
    for (std::size_t j = 0; j < n_osc; ++j)
        cfg.gammas[j] = std::sqrt(c / m_b * std::pow(cfg.omegas[j], 3.0 - H2) * weights[j]);
    return cfg;
}

double bath_kernel(const HeatBathConfig& cfg, double t) {
    cfg.validate();
    double sum = 0.0;
    for (std::size_t j = 0; j < cfg.n_osc; ++j) {
        const double w = cfg.omegas[j];
        sum += cfg.gammas[j] * cfg.gammas[j] / (w * w) * std::cos(w * t);
    }
    return cfg.m_b * sum;
}

SystemState sample_initial_conditions(const HeatBathConfig& cfg, double x0, std::uint64_t seed) {
    cfg.validate();
    Rng rng(seed);
    SystemState s;
    s.x = x0;
    s.p = 0.0;
    s.t = 0.0;
    s.q.resize(cfg.n_osc);
    s.p_b.resize(cfg.n_osc);
    const double sd_p = std::sqrt(cfg.m_b * cfg.kbt);
    for (std::size_t j = 0; j < cfg.n_osc; ++j) {
        const double w = cfg.omegas[j];
        const double sd_q = std::sqrt(cfg.kbt / cfg.m_b) / w;
        s.q[j] = cfg.gammas[j] * x0 / (w * w) + sd_q * rng.normal();
        s.p_b[j] = sd_p * rng.normal();
    }
    return s;
}

double total_energy(const HeatBathConfig& cfg, const SystemState& s, double mass,
                    std::optional<double> psi) {
    double e = s.p * s.p / (2.0 * mass);
    if (psi) e += 0.5 * mass * *psi * s.x * s.x;
    for (std::size_t j = 0; j < cfg.n_osc; ++j) {
        const double w = cfg.omegas[j];
        const double d = s.q[j] - cfg.gammas[j] * s.x / (w * w);
        e += s.p_b[j] * s.p_b[j] / (2.0 * cfg.m_b) + 0.5 * cfg.m_b * w * w * d * d;
    }
    return e;
}

Trace integrate_bath(const HeatBathConfig& cfg, const SystemState& initial, double mass,
                     std::optional<double> psi, const IntegrateOptions& opt,
                     std::vector<SystemState>* snapshots, SystemState* final_state) {
    cfg.validate();
    if (!(mass > 0.0)) throw ParameterError("particle mass must be positive");
    if (psi && !(*psi > 0.0)) throw ParameterError("potential strength must be positive when present");
    if (!(opt.step > 0.0) || !(opt.t_max > 0.0))
        throw ParameterError("integration needs positive step and t_max");
    if (!cfg.omegas.empty()) {
        const double wmax = *std::max_element(cfg.omegas.begin(), cfg.omegas.end());
        if (opt.step > 0.1 / wmax)
            throw ParameterError("integration step too large: need step <= 0.1/omega_max = "
                                 + std::to_string(0.1 / wmax));
    }
    if (initial.q.size() != cfg.n_osc || initial.p_b.size() != cfg.n_osc)
        throw ParameterError("initial state does not match the bath size");

    const std::size_t steps = static_cast<std::size_t>(std::ceil(opt.t_max / opt.step - 1e-12));
    const std::size_t stride = std::max<std::size_t>(1, opt.output_stride);

    SystemState s = initial;
    const double half = 0.5 * opt.step;
    const double spring = psi ? mass * *psi : 0.0;

    std::vector<double> fq(cfg.n_osc);
    auto particle_force = [&](const SystemState& st) {
        double f = -spring * st.x;
        for (std::size_t j = 0; j < cfg.n_osc; ++j) {
            const double w = cfg.omegas[j];
            const double gamma = cfg.gammas[j];
            const double d = st.q[j] - gamma * st.x / (w * w);
            fq[j] = -cfg.m_b * w * w * d;
            f += gamma * cfg.m_b * d;
        }
        return f;
    };

    std::vector<double> out;
    out.reserve(steps / stride + 2);
    out.push_back(s.x);
    if (snapshots) snapshots->push_back(s);

    double fx = particle_force(s); // also fills fq
    for (std::size_t k = 1; k <= steps; ++k) {
        s.p += half * fx;
        for (std::size_t j = 0; j < cfg.n_osc; ++j) s.p_b[j] += half * fq[j];
        s.x += opt.step * s.p / mass;
        for (std::size_t j = 0; j < cfg.n_osc; ++j) s.q[j] += opt.step * s.p_b[j] / cfg.m_b;
        fx = particle_force(s);
        s.p += half * fx;
        for (std::size_t j = 0; j < cfg.n_osc; ++j) s.p_b[j] += half * fq[j];
        s.t = static_cast<double>(k) * opt.step;
        if (k % stride == 0) {
            out.push_back(s.x);
            if (snapshots) snapshots->push_back(s);
        }
    }
    if (final_state) *final_state = s;

    TraceMeta meta{{"generator", "heatbath-verlet"},
                   {"n_osc", std::to_string(cfg.n_osc)},
                   {"step", std::to_string(opt.step)},
                   {"m", std::to_string(mass)},
                   {"kbt", std::to_string(cfg.kbt)}};
    if (psi) meta["psi"] = std::to_string(*psi);
    return Trace(opt.step * static_cast<double>(stride), std::move(out), 0.0, std::move(meta));
}

FdReport verify_fluctuation_dissipation(const HeatBathConfig& cfg, std::size_t members,
                                        const std::vector<double>& lags, std::uint64_t seed) {
    cfg.validate();
    if (members < 2) throw ParameterError("fluctuation-dissipation check needs >= 2 members");
    if (lags.empty()) throw ParameterError("fluctuation-dissipation check needs a lag grid");

    const double max_lag = *std::max_element(lags.begin(), lags.end());
    const double offset = 0.5 * max_lag; // second anchor for the stationarity probe

    // G samples at t = 0, offset, l, offset + l for every lag
    const std::size_t L = lags.size();
    std::vector<std::vector<double>> g0(members), ga(members), gl(members), gal(members);
    parallel_for(members, [&](std::size_t m) {
        SystemState s0 = sample_initial_conditions(cfg, 0.0, substream_seed(seed, m));
        gl[m].resize(L);
        gal[m].resize(L);
        g0[m] = {bath_force_series(cfg, s0, 0.0)};
        ga[m] = {bath_force_series(cfg, s0, offset)};
        for (std::size_t i = 0; i < L; ++i) {
            gl[m][i] = bath_force_series(cfg, s0, lags[i]);
            gal[m][i] = bath_force_series(cfg, s0, offset + lags[i]);
        }
    });

    const double M = static_cast<double>(members);
    auto covariance = [&](auto&& a, auto&& b, double& sem_out) {
        double ma = 0.0, mb = 0.0;
        for (std::size_t m = 0; m < members; ++m) { ma += a(m); mb += b(m); }
        ma /= M;
        mb /= M;
        double acc = 0.0, acc2 = 0.0;
        for (std::size_t m = 0; m < members; ++m) {
            const double prod = (a(m) - ma) * (b(m) - mb);
            acc += prod;
            acc2 += prod * prod;
        }
        const double cov = acc / (M - 1.0);
        const double var_prod = std::max(0.0, acc2 / (M - 1.0) - cov * cov);
        sem_out = std::sqrt(var_prod / M);
        return cov;
    };

    FdReport report;
    report.lags = lags;
    report.empirical.resize(L);
    report.theoretical.resize(L);
    report.rel_err.resize(L);
    report.sem.resize(L);
    report.stationarity_gap.resize(L);
    for (std::size_t i = 0; i < L; ++i) {
        double sem0 = 0.0, sem1 = 0.0;
        const double c0 = covariance([&](std::size_t m) { return g0[m][0]; },
                                     [&](std::size_t m) { return gl[m][i]; }, sem0);
        const double c1 = covariance([&](std::size_t m) { return ga[m][0]; },
                                     [&](std::size_t m) { return gal[m][i]; }, sem1);
        const double theo = cfg.kbt * bath_kernel(cfg, lags[i]);
        report.empirical[i] = c0;
        report.theoretical[i] = theo;
        report.sem[i] = sem0;
        report.rel_err[i] = theo != 0.0 ? std::abs(c0 - theo) / std::abs(theo)
                                        : std::abs(c0 - theo);
        report.stationarity_gap[i] = std::abs(c1 - c0);
        report.max_rel_err = std::max(report.max_rel_err, report.rel_err[i]);
    }

    // window where the calibrated kernel stays within 10% of the power law
    const Hurst h(cfg.hurst);
    const double t0 = 1.0 / std::sqrt(cfg.omega_min * cfg.omega_max);
    const double j0 = bath_kernel(cfg, t0);
    const double k0 = memory_kernel(h, t0);
    double lo = t0, hi = t0;
    if (j0 > 0.0 && k0 > 0.0) {
        const double norm = j0 / k0;
        auto tracks = [&](double t) {
            const double target = norm * memory_kernel(h, t);
            return std::abs(bath_kernel(cfg, t) - target) <= 0.1 * std::abs(target);
        };
        const double factor = std::pow(10.0, 1.0 / 16.0);
        while (lo / factor > 0.01 / cfg.omega_max && tracks(lo / factor)) lo /= factor;
        while (hi * factor < 100.0 / cfg.omega_min && tracks(hi * factor)) hi *= factor;
    }
    report.window_t_min = lo;
    report.window_t_max = hi;
    report.recurrence_horizon =
        2.0 * kPi * static_cast<double>(cfg.n_osc) / (cfg.omega_max - cfg.omega_min);
    return report;
}

} // namespace subdiff
