#pragma once

#include <cstddef>
#include <vector>

#include "subdiff/errors.hpp"

namespace subdiff {

/// Natural cubic spline through (x_i, y_i) with strictly increasing x.
/// Evaluation outside [x_front, x_back] clamps to the boundary value.
class CubicSpline {
public:
    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n) throw InputError("spline needs >= 2 matching nodes");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1])) throw InputError("spline abscissae must increase strictly");
        m_.assign(n, 0.0);
        if (n == 2) return;
        // tridiagonal solve for second derivatives, natural ends
        std::vector<double> diag(n, 2.0), sub(n, 0.0), rhs(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double hl = x_[i] - x_[i - 1];
            const double hr = x_[i + 1] - x_[i];
            sub[i] = hl / (hl + hr);
            rhs[i] = 6.0 / (hl + hr)
                     * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
        }
        std::vector<double> c(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double mu = sub[i];
            const double lam = 1.0 - mu;
            const double denom = diag[i] - mu * c[i - 1];
            c[i] = lam / denom;
            rhs[i] = (rhs[i] - mu * rhs[i - 1]) / denom;
        }
        for (std::size_t i = n - 2; i >= 1; --i) m_[i] = rhs[i] - c[i] * m_[i + 1];
    }

    double operator()(double x) const {
        const std::size_t n = x_.size();
        if (x <= x_.front()) return y_.front();
        if (x >= x_.back()) return y_.back();
        std::size_t lo = 0, hi = n - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (x_[mid] <= x) lo = mid; else hi = mid;
        }
        const double h = x_[hi] - x_[lo];
        const double a = (x_[hi] - x) / h;
        const double b = (x - x_[lo]) / h;
        return a * y_[lo] + b * y_[hi]
               + ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * h * h / 6.0;
    }

private:
    std::vector<double> x_, y_, m_;
};

} // namespace subdiff
