#pragma once

#include <utility>
#include <vector>

namespace quench {

/// Kibble-Zurek decay exponent of n against the quench time:
/// nu r (d - p) / (1 + r z nu). Requires d >= p >= 0 and a nonzero
/// denominator (ValidationError otherwise).
double kz_exponent(double nu, double z, double r, int d, int p);

struct ScalingFit {
    double exponent = 0.0;  // slope of log n against log rate
    double intercept = 0.0;
    double r_squared = 0.0;
    double window_min = 0.0;
    double window_max = 0.0;
    int points = 0;
};

/// Ordinary least squares of log n against log rate over the points whose
/// rate lies in [rate_min, rate_max]. Needs >= 3 such points, all positive.
/// The result does not depend on the order of `points`.
ScalingFit fit_power_law(std::vector<std::pair<double, double>> points, double rate_min,
                         double rate_max);

/// Large-kick-count plateau (pi^4 / 32) gamma^2 (h_f - h_i)^2. Only meaningful
/// for short paths.
double plateau_asymptotic(double gamma, double h_i, double h_f);

/// (pi^2 / 2) sin^2 k gamma (h_f - h_i).
double phi_y_amplitude(double k, double gamma, double h_i, double h_f);

}  // namespace quench
