#include "quench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quench/errors.hpp"

namespace quench {

double kz_exponent(double nu, double z, double r, int d, int p) {
    if (p < 0 || d < p) throw ValidationError("kz_exponent: need d >= p >= 0");
    const double denom = 1.0 + r * z * nu;
    if (std::abs(denom) < 1e-14) throw ValidationError("kz_exponent: 1 + r z nu vanishes");
    return nu * r * static_cast<double>(d - p) / denom;
}

ScalingFit fit_power_law(std::vector<std::pair<double, double>> points, double rate_min,
                         double rate_max) {
    if (!(rate_min > 0.0) || !(rate_max >= rate_min))
        throw ValidationError("fit_power_law: window must satisfy 0 < min <= max");
    const double lo = rate_min * (1.0 - 1e-12);
    const double hi = rate_max * (1.0 + 1e-12);

    std::sort(points.begin(), points.end());
    std::vector<double> xs, ys;
    for (const auto& [rate, n] : points) {
        if (!(rate > 0.0) || !(n > 0.0)) {
            std::ostringstream msg;
            msg << "fit_power_law: nonpositive point (" << rate << ", " << n << ")";
            throw ValidationError(msg.str());
        }
        if (rate < lo || rate > hi) continue;
        xs.push_back(std::log(rate));
        ys.push_back(std::log(n));
    }
    if (xs.size() < 3) {
        std::ostringstream msg;
        msg << "fit_power_law: " << xs.size() << " point(s) in window [" << rate_min << ", "
            << rate_max << "], need at least 3";
        throw ValidationError(msg.str());
    }

    const double m = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw ValidationError("fit_power_law: all rates in the window coincide");

    ScalingFit fit;
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.intercept + fit.exponent * xs[i]);
        ss_res += e * e;
    }
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    fit.window_min = rate_min;
    fit.window_max = rate_max;
    fit.points = static_cast<int>(xs.size());
    return fit;
}

double plateau_asymptotic(double gamma, double h_i, double h_f) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double dh = h_f - h_i;
    return pi2 * pi2 / 32.0 * gamma * gamma * dh * dh;
}

double phi_y_amplitude(double k, double gamma, double h_i, double h_f) {
    const double s = std::sin(k);
    return 0.5 * std::numbers::pi * std::numbers::pi * s * s * gamma * (h_f - h_i);
}

}  // namespace quench
