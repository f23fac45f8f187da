#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subdiff/errors.hpp"

namespace subdiff {

/// Hurst exponent. Constructible for any value in (0,1); the GLE layers
/// additionally require the long-memory branch 1/2 < h < 1.
class Hurst {
public:
    explicit Hurst(double h) : h_(h) {
        if (!(h > 0.0 && h < 1.0))
            throw ParameterError("Hurst exponent must lie in (0,1), got " + std::to_string(h));
    }
    double value() const { return h_; }

    void require_long_memory() const {
        if (h_ <= 0.5)
            throw ParameterError("this operation needs the long-memory branch 1/2 < h < 1, got h = "
                                 + std::to_string(h_));
    }

private:
    double h_;
};

/// The (m, zeta, k_B T, psi) quadruple. psi is absent for a free particle.
struct PhysicalParams {
    double mass = 1.0;      // m
    double friction = 1.0;  // zeta, force * time / length
    double kbt = 1.0;       // thermal energy k_B * T
    std::optional<double> potential; // psi, 1/time^2; harmonic strength

    void validate() const {
        if (!(mass > 0.0)) throw ParameterError("mass must be positive");
        if (!(friction > 0.0)) throw ParameterError("friction must be positive");
        if (!(kbt > 0.0)) throw ParameterError("thermal energy must be positive");
        if (potential && !(*potential > 0.0))
            throw ParameterError("potential strength must be positive when present");
    }
    void require_free() const {
        validate();
        if (potential)
            throw ParameterError("free-particle operation called with a potential present");
    }
    void require_potential() const {
        validate();
        if (!potential)
            throw ParameterError("operation needs a harmonic potential (psi absent)");
    }
    double psi() const {
        require_potential();
        return *potential;
    }
};

using TraceMeta = std::map<std::string, std::string>;

/// Uniformly sampled real time series. Step size and length are fixed at
/// construction; instances are immutable and safe to share across threads.
class Trace {
public:
    Trace(double dt, std::vector<double> values, double start_time = 0.0, TraceMeta meta = {})
        : dt_(dt), start_(start_time), values_(std::move(values)), meta_(std::move(meta)) {
        if (!(dt_ > 0.0)) throw ParameterError("trace dt must be positive");
        if (values_.empty()) throw ParameterError("trace must hold at least one sample");
    }

    double dt() const { return dt_; }
    double start_time() const { return start_; }
    std::size_t size() const { return values_.size(); }
    double value(std::size_t i) const { return values_[i]; }
    double time(std::size_t i) const { return start_ + static_cast<double>(i) * dt_; }
    const std::vector<double>& values() const { return values_; }
    const TraceMeta& meta() const { return meta_; }

private:
    double dt_;
    double start_;
    std::vector<double> values_;
    TraceMeta meta_;
};

enum class CurveKind { velocity, displacement, cross };

/// Tabulated covariance (or MSD) values on a lag grid. `sem` holds the
/// standard-error band when the curve comes from an ensemble; empty otherwise.
struct CovarianceCurve {
    std::vector<double> lags;
    std::vector<double> values;
    std::vector<double> sem;
    CurveKind kind = CurveKind::displacement;
};

/// Tabulated spectral density values on a positive frequency grid.
struct SpectralCurve {
    std::vector<double> omegas;
    std::vector<double> values;
};

/// Tabulated Laplace-transform values on a strictly increasing positive
/// s-grid.
struct LaplaceCurve {
    std::vector<double> s;
    std::vector<double> values;

    void validate() const {
        if (s.size() != values.size() || s.empty())
            throw InputError("Laplace curve: grid/value size mismatch or empty");
        double prev = 0.0;
        for (double si : s) {
            if (!(si > prev)) throw InputError("Laplace curve grid must be strictly increasing and positive");
            prev = si;
        }
    }
};

} // namespace subdiff
