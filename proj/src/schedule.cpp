#include "quench/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quench/errors.hpp"

namespace quench {

namespace {

void require_positive_time(double T, const char* who) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        std::ostringstream msg;
        msg << who << ": total time must be positive and finite, got " << T;
        throw ValidationError(msg.str());
    }
}

// An affine theta path must not reach a pole of tan, where the control diverges.
void require_no_pole(double theta_i, double theta_f, const char* who) {
    const double pi = std::numbers::pi;
    const auto branch = [pi](double th) { return std::floor((th - 0.5 * pi) / pi); };
    const auto on_pole = [pi](double th) {
        return std::abs(std::remainder(th - 0.5 * pi, pi)) < 1e-12;
    };
    if (on_pole(theta_i) || on_pole(theta_f) || branch(theta_i) != branch(theta_f)) {
        std::ostringstream msg;
        msg << who << ": mixing-angle path [" << theta_i << ", " << theta_f
            << "] crosses a pole of tan(theta)";
        throw ValidationError(msg.str());
    }
}

}  // namespace

class GeodesicBuilder {
public:
    static Schedule make(ControlParam param, double p_i, double p_f, double T, double theta_i,
                         double theta_f, double offset, double scale) {
        Schedule s;
        s.kind_ = ScheduleKind::Geodesic;
        s.param_ = param;
        s.p_i_ = p_i;
        s.p_f_ = p_f;
        s.T_ = T;
        s.theta_i_ = theta_i;
        s.theta_f_ = theta_f;
        s.offset_ = offset;
        s.scale_ = scale;
        return s;
    }
};

double Schedule::theta_at_fraction(double lambda) const {
    if (kind_ == ScheduleKind::Linear) return 0.0;
    return theta_i_ + (theta_f_ - theta_i_) * lambda;
}

double Schedule::theta(double t) const { return theta_at_fraction(t / T_); }

double Schedule::value_from_theta(double th) const { return offset_ + scale_ * std::tan(th); }

double Schedule::value_at_fraction(double lambda) const {
    if (kind_ == ScheduleKind::Linear) return p_i_ + (p_f_ - p_i_) * lambda;
    if (lambda == 0.0) return p_i_;
    if (lambda == 1.0) return p_f_;
    return value_from_theta(theta_at_fraction(lambda));
}

double Schedule::value(double t) const { return value_at_fraction(t / T_); }

double Schedule::rate(double t) const {
    if (kind_ == ScheduleKind::Linear) return (p_f_ - p_i_) / T_;
    const double c = std::cos(theta(t));
    return scale_ * (theta_f_ - theta_i_) / T_ / (c * c);
}

Schedule linear_schedule(ControlParam param, double p_i, double p_f, double T) {
    require_positive_time(T, "linear_schedule");
    Schedule s;
    s.kind_ = ScheduleKind::Linear;
    s.param_ = param;
    s.p_i_ = p_i;
    s.p_f_ = p_f;
    s.T_ = T;
    return s;
}

Schedule lz_geodesic_schedule(double x_i, double x_f, double eps, double T) {
    require_positive_time(T, "lz_geodesic_schedule");
    if (eps == 0.0) throw ValidationError("lz_geodesic_schedule: eps = 0 leaves the mixing angle undefined");
    const double theta_i = std::atan2(x_i, eps);
    const double theta_f = theta_i + (std::atan(x_f / eps) - std::atan(x_i / eps));
    require_no_pole(theta_i, theta_f, "lz_geodesic_schedule");
    Schedule s = GeodesicBuilder::make(ControlParam::X, x_i, x_f, T, theta_i, theta_f, 0.0, eps);
    return s;
}

double xy_theta_gamma_chart(double k, double gamma, double h) {
    return std::atan2(gamma * std::sin(k), h - std::cos(k));
}

double xy_theta_h_chart(double k, double h) { return std::atan2(h - std::cos(k), std::sin(k)); }

Schedule xy_geodesic_schedule(double k, XYSweep mode, double p_i, double p_f, double fixed, double T) {
    require_positive_time(T, "xy_geodesic_schedule");
    const double s = std::sin(k);
    const double c = std::cos(k);
    if (std::abs(s) < 1e-14) {
        std::ostringstream msg;
        msg << "xy_geodesic_schedule: sin k = 0 at k = " << k;
        throw ValidationError(msg.str());
    }
    if (mode == XYSweep::VaryGamma) {
        const double a = fixed - c;
        if (a == 0.0) {
            std::ostringstream msg;
            msg << "xy_geodesic_schedule: h = cos k (k = " << k << ") leaves the mixing angle undefined";
            throw ValidationError(msg.str());
        }
        const double theta_i = xy_theta_gamma_chart(k, p_i, fixed);
        const double theta_f = theta_i + (std::atan(p_f * s / a) - std::atan(p_i * s / a));
        require_no_pole(theta_i, theta_f, "xy_geodesic_schedule");
        return GeodesicBuilder::make(ControlParam::Gamma, p_i, p_f, T, theta_i, theta_f, 0.0, a / s);
    }
    // h chart: tan(theta) = (h - cos k) / sin k is continuous in h for fixed k
    const double theta_i = xy_theta_h_chart(k, p_i);
    const double theta_f = theta_i + (std::atan((p_f - c) / s) - std::atan((p_i - c) / s));
    require_no_pole(theta_i, theta_f, "xy_geodesic_schedule");
    return GeodesicBuilder::make(ControlParam::H, p_i, p_f, T, theta_i, theta_f, c, s);
}

KickTrain::KickTrain(int n_kicks, double T, double delta_t)
    : n_kicks_(n_kicks), T_(T), delta_t_(delta_t), amplitude_(0.0) {
    if (n_kicks < 1) throw ValidationError("kick_train: need at least one kick");
    require_positive_time(T, "kick_train");
    if (!(delta_t > 0.0) || !std::isfinite(delta_t))
        throw ValidationError("kick_train: pulse width must be positive");
    const double spacing = T / n_kicks;
    // windows are centred on t_j; with spacing >= width they tile [0, T] without overlap
    if (spacing < delta_t * (1.0 - 1e-12)) {
        std::ostringstream msg;
        msg << "kick_train: pulses overlap (spacing " << spacing << " < width " << delta_t << ")";
        throw ValidationError(msg.str());
    }
    amplitude_ = std::numbers::pi / (2.0 * delta_t);
    fractions_.reserve(n_kicks);
    times_.reserve(n_kicks);
    for (int j = 1; j <= n_kicks; ++j) {
        const double lambda = (2.0 * j - 1.0) / (2.0 * n_kicks);
        fractions_.push_back(lambda);
        times_.push_back(lambda * T);
    }
}

double KickTrain::envelope(double t) const {
    for (int j = 0; j < n_kicks_; ++j)
        if (t >= window_start(j) && t < window_end(j)) return amplitude_;
    return 0.0;
}

std::vector<KickTrain::Interval> KickTrain::partition() const {
    std::vector<Interval> out;
    out.reserve(2 * n_kicks_ + 1);
    double cursor = 0.0;
    for (int j = 0; j < n_kicks_; ++j) {
        const double a = std::max(0.0, window_start(j));
        const double b = std::min(T_, window_end(j));
        if (a > cursor) out.push_back({cursor, a, -1});
        out.push_back({a, b, j});
        cursor = b;
    }
    if (T_ > cursor) out.push_back({cursor, T_, -1});
    return out;
}

std::int64_t step_count(double len, double dt) {
    const double n = std::ceil(len / dt - 1e-9);
    return n < 1.0 ? 1 : static_cast<std::int64_t>(n);
}

KickTrain kick_train(int n_kicks, double T, double delta_t) { return KickTrain(n_kicks, T, delta_t); }

double fs_metric_gamma(double k, double gamma, double h) {
    const double a = h - std::cos(k);
    if (a == 0.0) throw ValidationError("fs_metric_gamma: h = cos k");
    const double s = std::sin(k);
    const double c2 = a * a / (a * a + gamma * gamma * s * s);  // cos^2 theta_k
    const double dtheta = s / a * c2;
    return 0.25 * dtheta * dtheta;
}

double fs_metric_h(double k, double gamma, double h) {
    const double a = h - std::cos(k);
    const double delta = gamma * std::sin(k);
    const double e2 = a * a + delta * delta;
    if (e2 == 0.0) throw ValidationError("fs_metric_h: gapless point");
    const double dtheta = -delta / e2;
    return 0.25 * dtheta * dtheta;
}

double fs_metric_lz(double x, double eps) {
    const double e2 = x * x + eps * eps;
    if (e2 == 0.0) throw ValidationError("fs_metric_lz: gapless point");
    const double dtheta = eps / e2;
    return 0.25 * dtheta * dtheta;
}

}  // namespace quench
