#include "subdiff/analytic.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "subdiff/quadrature.hpp"
#include "subdiff/specfun.hpp"

namespace subdiff {

namespace {

constexpr double kPi = std::numbers::pi;

// |zeta Ktilde+(w) - i m w|^2 for w > 0
double free_denominator_sq(const PhysicalParams& p, Hurst h, double w) {
    const std::complex<double> d =
        p.friction * kernel_fourier_half(h, w) - std::complex<double>(0.0, p.mass * w);
    return std::norm(d);
}

// |m psi - m w^2 - i w zeta Ktilde+(w)|^2 for w > 0
double harmonic_denominator_sq(const PhysicalParams& p, Hurst h, double w) {
    const std::complex<double> d =
        std::complex<double>(p.mass * p.psi() - p.mass * w * w, 0.0)
        - std::complex<double>(0.0, w) * (p.friction * kernel_fourier_half(h, w));
    return std::norm(d);
}

// frequency where friction and inertia balance; the free-particle spectral
// density peaks near here
double free_corner_frequency(const PhysicalParams& p, Hurst h) {
    const double H = h.value();
    return std::pow(p.friction * std::tgamma(2.0 * H + 1.0) / p.mass, 1.0 / (2.0 * H));
}

void require_accuracy(const QuadResult& r, double rel_tol, const char* what) {
    const double rel = std::abs(r.value) > 0.0 ? r.abs_error / std::abs(r.value) : r.abs_error;
    if (rel > 4.0 * rel_tol && r.abs_error > 1e-14)
        throw AccuracyError(std::string(what) + ": quadrature achieved relative error "
                                + std::to_string(rel) + " above the requested tolerance",
                            rel);
}

} // namespace

double velocity_spectral_density(const PhysicalParams& p, Hurst h, double omega) {
    p.require_free();
    h.require_long_memory();
    if (omega == 0.0) throw SingularityError("velocity spectral density is singular at omega = 0");
    const double w = std::abs(omega);
    return p.kbt * p.friction * kernel_fourier_full(h, w) / free_denominator_sq(p, h, w);
}

double velocity_autocovariance(const PhysicalParams& p, Hurst h, double t, double rel_tol) {
    p.require_free();
    h.require_long_memory();
    QuadOptions opt;
    opt.rel_tol = rel_tol;
    opt.endpoint_exponent = 2.0 * h.value() - 1.0;
    opt.structure_scale = free_corner_frequency(p, h);
    opt.abs_floor = 1e-3 * rel_tol * p.kbt / p.mass;
    auto f = [&](double w) {
        return p.kbt * p.friction * kernel_fourier_full(h, w) / free_denominator_sq(p, h, w);
    };
    QuadResult r = fourier_cos(f, std::abs(t), opt);
    require_accuracy(r, rel_tol, "velocity autocovariance");
    return r.value / kPi;
}

double msd_free(const PhysicalParams& p, Hurst h, double t, double rel_tol) {
    p.require_free();
    h.require_long_memory();
    if (t < 0.0) throw ParameterError("msd_free needs t >= 0");
    if (t == 0.0) return 0.0;

    auto f = [&](double w) {
        return p.kbt * p.friction * kernel_fourier_full(h, w)
               / (free_denominator_sq(p, h, w) * w * w);
    };

    const double z0 = 0.5 * kPi / t;
    const double corner = free_corner_frequency(p, h);

    // (0, z0]: keep 1 - cos(t w) = 2 sin^2(t w / 2) intact; the two pieces
    // separately diverge at the origin
    auto head_integrand = [&](double w) {
        const double s = std::sin(0.5 * t * w);
        return f(w) * 2.0 * s * s;
    };
    QuadResult head = integrate_endpoint(head_integrand, z0, 2.0 * h.value() - 1.0,
                                         rel_tol * 0.25, 0.0, 4000);

    // [z0, inf): plain tail minus oscillatory tail
    QuadOptions opt;
    opt.rel_tol = rel_tol * 0.25;
    opt.structure_scale = corner;
    opt.lower = z0;
    QuadResult tail_plain = integrate_semi_infinite(f, opt);
    opt.abs_floor = std::max(1e-3 * rel_tol * std::abs(tail_plain.value), 1e-300);
    QuadResult tail_osc = fourier_cos(f, t, opt);

    QuadResult total{head.value + tail_plain.value - tail_osc.value,
                     head.abs_error + tail_plain.abs_error + tail_osc.abs_error};
    require_accuracy(total, rel_tol, "free-particle MSD");
    return total.value * 2.0 / kPi;
}

double msd_asymptote(const PhysicalParams& p, Hurst h, double t) {
    p.require_free();
    h.require_long_memory();
    if (!(t > 0.0)) throw ParameterError("msd_asymptote needs t > 0");
    const double H = h.value();
    const double prefactor = (p.kbt / p.friction) * std::sin(2.0 * H * kPi)
                             / (kPi * H * (1.0 - 2.0 * H) * (2.0 - 2.0 * H));
    return prefactor * std::pow(t, 2.0 - 2.0 * H);
}

HarmonicCovariances harmonic_covariances(const PhysicalParams& p, Hurst h, double t,
                                         double rel_tol) {
    p.require_potential();
    h.require_long_memory();
    const double H = h.value();
    const double scale = p.kbt * p.friction / kPi;
    const double resonance = std::sqrt(p.psi());
    const double corner = free_corner_frequency(p, h);

    QuadOptions opt;
    opt.rel_tol = rel_tol;
    opt.structure_scale = resonance;
    opt.breakpoints = {0.5 * resonance, 2.0 * resonance, corner};

    auto quotient = [&](double w) {
        return kernel_fourier_full(h, w) / harmonic_denominator_sq(p, h, w);
    };

    HarmonicCovariances out{};

    opt.endpoint_exponent = 1.0 - 2.0 * H;
    opt.abs_floor = 1e-3 * rel_tol * p.kbt / (p.mass * p.psi());
    QuadResult xx = fourier_cos(quotient, std::abs(t), opt);
    require_accuracy(xx, rel_tol, "harmonic displacement covariance");
    out.xx = scale * xx.value;

    opt.endpoint_exponent = 3.0 - 2.0 * H;
    opt.abs_floor = 1e-3 * rel_tol * p.kbt / p.mass;
    QuadResult vv = fourier_cos([&](double w) { return w * w * quotient(w); }, std::abs(t), opt);
    require_accuracy(vv, rel_tol, "harmonic velocity covariance");
    out.vv = scale * vv.value;

    if (t == 0.0) {
        out.xv = 0.0;
        out.vx = 0.0;
    } else {
        opt.endpoint_exponent = 2.0 - 2.0 * H;
        opt.abs_floor = 1e-3 * rel_tol * p.kbt / std::sqrt(p.mass * p.mass * p.psi());
        QuadResult xv = fourier_sin([&](double w) { return w * quotient(w); }, t, opt);
        require_accuracy(xv, rel_tol, "harmonic cross covariance");
        out.xv = scale * xv.value;
        out.vx = out.xv; // same printed integrand for both orderings
    }
    return out;
}

double relaxation_time(const PhysicalParams& p, Hurst h) {
    p.require_potential();
    h.require_long_memory();
    const double H = h.value();
    const double base = p.friction * std::tgamma(2.0 * H + 1.0) / (p.mass * p.psi());
    return std::pow(base, 1.0 / (2.0 - 2.0 * H));
}

double overdamped_autocovariance(const PhysicalParams& p, Hurst h, double t) {
    p.require_potential();
    h.require_long_memory();
    const double alpha = 2.0 - 2.0 * h.value();
    const double tau = relaxation_time(p, h);
    const double arg = -std::pow(std::abs(t) / tau, alpha);
    return (p.kbt / (p.mass * p.psi())) * mittag_leffler(alpha, arg);
}

double overdamped_spectral_density(const PhysicalParams& p, Hurst h, double omega) {
    p.require_potential();
    h.require_long_memory();
    if (!(omega > 0.0)) throw ParameterError("overdamped spectral density needs omega > 0");
    const double H = h.value();
    const double tau = relaxation_time(p, h);
    const double u = std::pow(tau * omega, 2.0 - 2.0 * H);
    const double c = std::cos(H * kPi);
    const double num = 2.0 * std::sin(H * kPi) * u / omega;
    const double den = 1.0 - 2.0 * c * u + u * u;
    return (p.kbt / (p.mass * p.psi())) * num / den;
}

} // namespace subdiff
