#pragma once

// Generalized adiabaticity error
//   eps_01(lambda) = | int_0^lambda exp(i phi(l)) dl |,
//   phi(lambda)    = T int_0^lambda (E0 - E1) dl,
// the dynamical-phase cancellation measure between ground and first excited
// levels.

#include <complex>
#include <vector>

namespace quench {

/// Incremental trapezoidal accumulator for eps_01. The phase is advanced by
/// explicit increments so that piecewise-constant generators are integrated
/// exactly.
class PhaseErrorAccumulator {
public:
    /// Advance by d_lambda while the phase changes by d_phi; the integrand
    /// exp(i phi) is integrated with the trapezoid rule over the interval.
    void advance(double d_lambda, double d_phi);
    /// Same as advance() with rotation = exp(i d_phi) supplied by the caller,
    /// for loops that already have the sine and cosine at hand.
    void advance(double d_lambda, double d_phi, std::complex<double> rotation) {
        const std::complex<double> before = current_;
        phase_ += d_phi;
        current_ *= rotation;
        current_ *= 1.5 - 0.5 * std::norm(current_);  // first-order renormalization
        integral_ += 0.5 * d_lambda * (before + current_);
    }
    /// Advance by d_lambda at constant phase (exact).
    void hold(double d_lambda);

    [[nodiscard]] double phase() const { return phase_; }
    [[nodiscard]] std::complex<double> integral() const { return integral_; }
    [[nodiscard]] double error() const { return std::abs(integral_); }

private:
    double phase_ = 0.0;
    std::complex<double> current_{1.0, 0.0};  // exp(i phase_)
    std::complex<double> integral_{0.0, 0.0};
};

struct PhaseSample {
    double lambda = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
};

/// eps_01 at every sample. phi is accumulated from E0 - E1 by the trapezoid
/// rule; the first sample must be at lambda = 0 and lambdas must not decrease.
std::vector<double> adiabatic_error(const std::vector<PhaseSample>& samples, double T);

}  // namespace quench
