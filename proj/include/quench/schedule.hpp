#pragma once

// Control paths for the three driving strategies and the Fubini-Study metric
// along them.
//
// A geodesic keeps the ground-state mixing angle affine in time. The control
// value is recovered from the angle as  offset + scale * tan(theta), which
// covers all supported models:
//   LZ field        x     = eps * tan(theta)                   (theta = Bloch angle)
//   XY anisotropy   gamma = (h - cos k)/sin k * tan(theta)     (theta = Bloch angle)
//   XY field        h     = cos k + sin k * tan(theta)         (theta from the h-axis)
// The last convention is the complement of the Bloch angle when gamma = 1.

#include <cstdint>
#include <vector>

namespace quench {

enum class ScheduleKind { Linear, Geodesic };
enum class ControlParam { X, Gamma, H };

class Schedule {
public:
    [[nodiscard]] ScheduleKind kind() const { return kind_; }
    [[nodiscard]] ControlParam param() const { return param_; }
    [[nodiscard]] double p_i() const { return p_i_; }
    [[nodiscard]] double p_f() const { return p_f_; }
    [[nodiscard]] double total_time() const { return T_; }
    /// Mixing-angle endpoints; both zero for Linear schedules.
    [[nodiscard]] double theta_i() const { return theta_i_; }
    [[nodiscard]] double theta_f() const { return theta_f_; }

    /// Mixing angle at time t (Geodesic only; Linear returns 0).
    [[nodiscard]] double theta(double t) const;
    /// Mixing angle at scaled time lambda = t / T.
    [[nodiscard]] double theta_at_fraction(double lambda) const;
    /// Control value at time t.
    [[nodiscard]] double value(double t) const;
    /// Control value at scaled time lambda = t / T.
    [[nodiscard]] double value_at_fraction(double lambda) const;
    /// d value / dt at time t.
    [[nodiscard]] double rate(double t) const;
    /// Control value for an arbitrary mixing angle on this geodesic's chart.
    [[nodiscard]] double value_from_theta(double theta) const;

    friend Schedule linear_schedule(ControlParam, double, double, double);
    friend Schedule lz_geodesic_schedule(double, double, double, double);
    friend class GeodesicBuilder;

private:
    Schedule() = default;

    ScheduleKind kind_ = ScheduleKind::Linear;
    ControlParam param_ = ControlParam::X;
    double p_i_ = 0.0;
    double p_f_ = 0.0;
    double T_ = 1.0;
    double theta_i_ = 0.0;
    double theta_f_ = 0.0;
    double offset_ = 0.0;
    double scale_ = 1.0;
};

Schedule linear_schedule(ControlParam param, double p_i, double p_f, double T);

/// Geodesic for H = (x X + eps Z)/2: theta = atan2(x, eps) continued along the path.
Schedule lz_geodesic_schedule(double x_i, double x_f, double eps, double T);

enum class XYSweep { VaryGamma, VaryH };

/// Per-mode geodesic for the XY chain. For VaryGamma, `fixed` is h; for
/// VaryH it is gamma (the h-chart angle does not depend on gamma).
Schedule xy_geodesic_schedule(double k, XYSweep mode, double p_i, double p_f, double fixed,
                              double T);

/// Mixing angles used by the XY geodesics.
double xy_theta_gamma_chart(double k, double gamma, double h);  // atan2(gamma sin k, h - cos k)
double xy_theta_h_chart(double k, double h);                    // atan2(h - cos k, sin k)

/// Equally spaced rectangular pulses of area pi/2 centred on t_j = lambda_j T,
/// lambda_j = (2j - 1) / (2 n).
class KickTrain {
public:
    KickTrain(int n_kicks, double T, double delta_t);

    [[nodiscard]] int n_kicks() const { return n_kicks_; }
    [[nodiscard]] double total_time() const { return T_; }
    [[nodiscard]] double delta_t() const { return delta_t_; }
    [[nodiscard]] double amplitude() const { return amplitude_; }
    [[nodiscard]] const std::vector<double>& kick_times() const { return times_; }
    /// lambda_j for j = 1..n (independent of T).
    [[nodiscard]] const std::vector<double>& kick_fractions() const { return fractions_; }
    [[nodiscard]] double window_start(int j) const { return times_[j] - 0.5 * delta_t_; }
    [[nodiscard]] double window_end(int j) const { return times_[j] + 0.5 * delta_t_; }
    /// Envelope value at time t (amplitude inside a window, 0 outside).
    [[nodiscard]] double envelope(double t) const;

    struct Interval {
        double t0;
        double t1;
        int kick;  // index of the pulse covering the interval, -1 between pulses
    };
    /// [0, T] cut at every pulse edge, in time order; empty gaps are omitted.
    [[nodiscard]] std::vector<Interval> partition() const;

private:
    int n_kicks_;
    double T_;
    double delta_t_;
    double amplitude_;
    std::vector<double> fractions_;
    std::vector<double> times_;
};

KickTrain kick_train(int n_kicks, double T, double delta_t);

/// Number of equal midpoint steps used to cover a span of length `len` with
/// steps no longer than dt (at least one).
std::int64_t step_count(double len, double dt);

/// g_{gamma gamma} = (1/4) (d theta_k / d gamma)^2 for the XY ground state.
double fs_metric_gamma(double k, double gamma, double h);
/// g_{hh} = (1/4) (d theta_k / d h)^2 for the XY ground state.
double fs_metric_h(double k, double gamma, double h);
/// g_{xx} for the Landau-Zener ground state.
double fs_metric_lz(double x, double eps);

}  // namespace quench
