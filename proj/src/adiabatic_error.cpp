#include "quench/adiabatic_error.hpp"

#include <cmath>

#include "quench/errors.hpp"

namespace quench {

void PhaseErrorAccumulator::advance(double d_lambda, double d_phi) {
    const std::complex<double> before = current_;
    if (d_phi != 0.0) {
        phase_ += d_phi;
        current_ = std::polar(1.0, phase_);
    }
    integral_ += 0.5 * d_lambda * (before + current_);
}

void PhaseErrorAccumulator::hold(double d_lambda) { integral_ += d_lambda * current_; }

std::vector<double> adiabatic_error(const std::vector<PhaseSample>& samples, double T) {
    std::vector<double> out;
    if (samples.empty()) return out;
    if (samples.front().lambda != 0.0)
        throw ValidationError("adiabatic_error: first sample must be at lambda = 0");
    out.reserve(samples.size());
    out.push_back(0.0);
    PhaseErrorAccumulator acc;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const PhaseSample& a = samples[i - 1];
        const PhaseSample& b = samples[i];
        const double dl = b.lambda - a.lambda;
        if (dl < 0.0 || b.lambda > 1.0 + 1e-12)
            throw ValidationError("adiabatic_error: lambda grid must be monotone in [0, 1]");
        const double d_phi = T * 0.5 * dl * ((a.e0 - a.e1) + (b.e0 - b.e1));
        acc.advance(dl, d_phi);
        out.push_back(acc.error());
    }
    return out;
}

}  // namespace quench
