#include "subdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace subdiff {

namespace {

// Gauss-Kronrod 7/15 pair (QUADPACK abscissae/weights, positive half).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEst {
    double integral;
    double error;
};

PanelEst gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double ik = kWgk[7] * fc;
    double ig = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double x = h * kXgk[i];
        const double fsum = f(c - x) + f(c + x);
        ik += kWgk[i] * fsum;
        if (i % 2 == 1) ig += kWg[i / 2] * fsum;
    }
    ik *= h;
    ig *= h;
    double err = std::abs(ik - ig);
    if (!std::isfinite(ik)) err = std::numeric_limits<double>::infinity();
    return {ik, err};
}

struct Interval {
    double a, b, integral, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

} // namespace

QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              double rel_tol, double abs_floor, int max_intervals) {
    if (a == b) return {0.0, 0.0};
    PanelEst first = gk15(f, a, b);
    std::priority_queue<Interval> heap;
    heap.push({a, b, first.integral, first.error});
    double total = first.integral;
    double err = first.error;
    int used = 1;
    while (err > std::max(rel_tol * std::abs(total), abs_floor) && used < max_intervals) {
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at machine resolution; accept as-is
            heap.push({worst.a, worst.b, worst.integral, 0.0});
            err -= worst.error;
            continue;
        }
        PanelEst left = gk15(f, worst.a, mid);
        PanelEst right = gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        err += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.integral, left.error});
        heap.push({mid, worst.b, right.integral, right.error});
        ++used;
    }
    return {total, err};
}

QuadResult integrate_endpoint(const Integrand& f, double a, double p,
                              double rel_tol, double abs_floor, int max_intervals) {
    if (a <= 0.0) return {0.0, 0.0};
    if (p == 0.0) return integrate_adaptive(f, 0.0, a, rel_tol, abs_floor, max_intervals);
    const double q = p + 1.0; // > 0
    const double e = 1.0 / q;
    auto g = [&](double u) {
        const double w = std::pow(u, e);
        return f(w) * e * std::pow(u, e - 1.0);
    };
    return integrate_adaptive(g, 0.0, std::pow(a, q), rel_tol, abs_floor, max_intervals);
}

namespace {

// Wynn epsilon acceleration over a sequence of partial sums; even columns of
// the epsilon table estimate the limit of an alternating series.
class WynnEpsilon {
public:
    double push(double s) {
        table_.push_back(s);
        const std::size_t n = table_.size() - 1;
        double two_back = 0.0;
        for (std::size_t j = n; j >= 1; --j) {
            const double prev = two_back;
            two_back = table_[j - 1];
            const double diff = table_[j] - two_back;
            if (std::abs(diff) < 1e-305) {
                table_[j - 1] = table_[j]; // numerically converged column
            } else {
                table_[j - 1] = prev + 1.0 / diff;
            }
        }
        return table_[n % 2];
    }

private:
    std::vector<double> table_;
};

// Integrates g from `lower` outward: optional origin handling, interior
// knots, then geometrically growing panels with a power-law remainder probe.
// Stops either when the remainder is negligible (done=true) or at stop_at.
struct SweepResult {
    double value = 0.0;
    double error = 0.0;
    double reached = 0.0;
    bool done = false;
};

SweepResult sweep_out(const Integrand& g, const Integrand& magnitude,
                      const QuadOptions& opt, double lower, double stop_at,
                      bool add_remainder) {
    SweepResult out;
    const double scale = opt.structure_scale > 0.0 ? opt.structure_scale : 1.0;

    std::vector<double> knots;
    for (double b : opt.breakpoints)
        if (b > lower && b < stop_at && b > 0.0) knots.push_back(b);
    if (scale > lower && scale < stop_at) knots.push_back(scale);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    double edge = lower;
    const double panel_rel = opt.rel_tol * 0.25;

    if (edge == 0.0) {
        const double first = knots.empty() ? std::min(scale, stop_at) : knots.front();
        QuadResult head = integrate_endpoint(g, first, opt.endpoint_exponent, panel_rel,
                                             opt.abs_floor * 0.25, opt.max_intervals);
        out.value += head.value;
        out.error += head.abs_error;
        edge = first;
    }
    for (double k : knots) {
        if (k <= edge) continue;
        QuadResult part = integrate_adaptive(g, edge, k, panel_rel,
                                             std::max(opt.abs_floor * 0.25, opt.rel_tol * std::abs(out.value) * 0.05),
                                             opt.max_intervals);
        out.value += part.value;
        out.error += part.abs_error;
        edge = k;
    }

    // geometric continuation with remainder control
    double prev_panel = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 64 && edge < stop_at; ++j) {
        double next = std::min(edge * 2.0, stop_at);
        QuadResult part = integrate_adaptive(g, edge, next, panel_rel,
                                             std::max(opt.abs_floor * 0.25, opt.rel_tol * std::abs(out.value) * 0.05),
                                             opt.max_intervals);
        out.value += part.value;
        out.error += part.abs_error;
        edge = next;
        if (edge >= stop_at) break;

        // probe the local decay exponent of |f| at the running edge
        const double fa = std::abs(magnitude(edge));
        const double fb = std::abs(magnitude(2.0 * edge));
        double remainder = std::numeric_limits<double>::infinity();
        if (fa == 0.0 && std::abs(part.value) == 0.0) {
            remainder = 0.0;
        } else if (fa > 0.0 && fb > 0.0) {
            const double q = -std::log(fb / fa) / std::numbers::ln2;
            if (q > 1.05) remainder = fa * edge / (q - 1.0);
        }
        if (!std::isfinite(remainder)) {
            // fall back on the panel-to-panel ratio
            const double cur = std::abs(part.value);
            if (prev_panel > 0.0 && std::isfinite(prev_panel) && cur < 0.9 * prev_panel) {
                const double r = cur / prev_panel;
                remainder = cur * r / (1.0 - r);
            }
        }
        prev_panel = std::abs(part.value);

        const double goal = std::max(opt.rel_tol * std::abs(out.value), opt.abs_floor);
        if (remainder <= goal) {
            if (add_remainder && std::isfinite(remainder)) {
                out.value += remainder * (magnitude(edge) < 0.0 ? -1.0 : 1.0);
                out.error += 0.5 * remainder;
            } else {
                out.error += remainder;
            }
            out.done = true;
            break;
        }
    }
    out.reached = edge;
    return out;
}

QuadResult fourier_kind(const Integrand& f, double t, const QuadOptions& opt, bool cosine) {
    const double pi = std::numbers::pi;
    const double at = std::abs(t);

    if (at == 0.0) {
        if (cosine) return integrate_semi_infinite(f, opt);
        return {0.0, 0.0};
    }

    auto g = [&](double w) { return cosine ? f(w) * std::cos(at * w) : f(w) * std::sin(at * w); };

    double start = std::max(opt.lower, 0.0);

    // head: from the lower edge to the first zero past it
    double k0 = cosine ? std::ceil(at * start / pi - 0.5) : std::ceil(at * start / pi);
    if (k0 < (cosine ? 0.0 : 1.0)) k0 = cosine ? 0.0 : 1.0;
    auto zero_at = [&](double k) { return (cosine ? (k + 0.5) : k) * pi / at; };
    double z = zero_at(k0);
    while (z <= start) z = zero_at(++k0);

    SweepResult head = sweep_out(g, f, opt, start, z, /*add_remainder=*/false);
    double total = head.value;
    double err = head.error;
    if (head.done) {
        const double sign = (!cosine && t < 0.0) ? -1.0 : 1.0;
        return {sign * total, err};
    }

    // alternating half-period panels, then epsilon acceleration
    WynnEpsilon wynn;
    double accel = total;
    double accel_prev = std::numeric_limits<double>::quiet_NaN();
    double best = total;
    double best_err = std::numeric_limits<double>::infinity();
    int decreasing = 0;
    int tiny = 0;
    bool accelerating = false;
    double prev_mag = std::numeric_limits<double>::infinity();
    const double h = pi / at;

    for (int k = 0; k < opt.max_panels; ++k) {
        const double a = z + static_cast<double>(k) * h;
        const double b = a + h;
        QuadResult panel = integrate_adaptive(
            g, a, b, std::min(1e-9, opt.rel_tol),
            std::max(opt.abs_floor * 0.1, opt.rel_tol * std::abs(total) * 0.02), opt.max_intervals);
        total += panel.value;
        err += panel.abs_error;
        const double mag = std::abs(panel.value);
        const double goal = std::max(opt.rel_tol * std::abs(total), opt.abs_floor);

        if (!accelerating) {
            if (mag <= prev_mag * (1.0 + 1e-9)) ++decreasing; else decreasing = 0;
            prev_mag = mag;
            if (mag <= 0.01 * goal) {
                if (++tiny >= 3) { best = total; best_err = err; break; }
            } else {
                tiny = 0;
            }
            if (decreasing >= 4) {
                accelerating = true;
                accel = wynn.push(total);
            }
            best = total;
            best_err = err + mag; // truncation at least the size of the last panel
        } else {
            accel_prev = accel;
            accel = wynn.push(total);
            const double accel_err = std::abs(accel - accel_prev);
            if (std::isfinite(accel) && accel_err + err <= goal) {
                best = accel;
                best_err = accel_err + err;
                break;
            }
            if (std::isfinite(accel)) {
                best = accel;
                best_err = accel_err + err;
            }
        }
    }

    const double sign = (!cosine && t < 0.0) ? -1.0 : 1.0;
    return {sign * best, best_err};
}

} // namespace

QuadResult integrate_semi_infinite(const Integrand& f, const QuadOptions& opt) {
    SweepResult s = sweep_out(f, f, opt, std::max(opt.lower, 0.0),
                              std::numeric_limits<double>::infinity(),
                              /*add_remainder=*/true);
    double err = s.error;
    if (!s.done) err = std::max(err, std::abs(s.value) * 1e-3 + opt.abs_floor);
    return {s.value, err};
}

QuadResult fourier_cos(const Integrand& f, double t, const QuadOptions& opt) {
    return fourier_kind(f, t, opt, true);
}

QuadResult fourier_sin(const Integrand& f, double t, const QuadOptions& opt) {
    return fourier_kind(f, t, opt, false);
}

double oscillatory_quadrature(const Integrand& f, double t, double tol,
                              double endpoint_exponent, double structure_scale) {
    if (!(tol > 0.0)) throw ParameterError("oscillatory quadrature tolerance must be positive");
    QuadOptions opt;
    opt.rel_tol = tol;
    opt.endpoint_exponent = endpoint_exponent;
    opt.structure_scale = structure_scale;
    QuadResult r = fourier_cos(f, t, opt);
    const double rel = std::abs(r.value) > 0.0 ? r.abs_error / std::abs(r.value) : r.abs_error;
    if (rel > tol * 4.0 && r.abs_error > 1e-14)
        throw AccuracyError("oscillatory quadrature did not converge; achieved relative error "
                                + std::to_string(rel),
                            rel);
    return r.value;
}

} // namespace subdiff
