#include "quench/lz.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "quench/adiabatic_error.hpp"
#include "quench/errors.hpp"
#include "quench/io.hpp"

namespace quench {

Herm2 lz_hamiltonian(double x, double eps) { return {0.0, Vec3{0.5 * x, 0.0, 0.5 * eps}}; }

Herm2 lz_geodesic_hamiltonian(double theta) {
    return {0.0, Vec3{0.5 * std::sin(theta), 0.0, 0.5 * std::cos(theta)}};
}

void LZConfig::validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) throw ValidationError("lz: T must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("lz: dt must be positive");
    if (T / dt < 100.0 * (1.0 - 1e-12)) {
        std::ostringstream msg;
        msg << "lz: need at least 100 steps (T / dt = " << T / dt << ")";
        throw ValidationError(msg.str());
    }
    if (trace_stride < 1) throw ValidationError("lz: trace stride must be >= 1");
    if ((strategy == Strategy::GeoJump) != kicks.has_value())
        throw ValidationError("lz: a kick train is required for geojump and only for geojump");
    if (kicks && std::abs(kicks->total_time() - T) > 1e-12 * T)
        throw ValidationError("lz: kick train total time differs from T");
    if (strategy != Strategy::Lin && eps == 0.0)
        throw ValidationError("lz: eps = 0 leaves the geodesic undefined");
}

namespace {

struct Span {
    double t0;
    double t1;
    double envelope;  // 1 for continuous driving
    double centre;    // pulses only: exact window centre
    double width;     // pulses only: nominal width
};

std::vector<Span> spans_for(const LZConfig& cfg) {
    if (!cfg.kicks) return {{0.0, cfg.T, 1.0, 0.0, 0.0}};
    std::vector<Span> out;
    for (const auto& iv : cfg.kicks->partition()) {
        if (iv.kick < 0) out.push_back({iv.t0, iv.t1, 0.0, 0.0, 0.0});
        else
            out.push_back({iv.t0, iv.t1, cfg.kicks->amplitude(), cfg.kicks->kick_times()[iv.kick],
                           cfg.kicks->delta_t()});
    }
    return out;
}

}  // namespace

Trajectory evolve_lz(const LZConfig& cfg) {
    cfg.validate();

    const bool geodesic = cfg.strategy != Strategy::Lin;
    const Schedule path = geodesic ? lz_geodesic_schedule(cfg.x_i, cfg.x_f, cfg.eps, cfg.T)
                                   : linear_schedule(ControlParam::X, cfg.x_i, cfg.x_f, cfg.T);
    const auto generator = [&](double t, double envelope) {
        if (!geodesic) return lz_hamiltonian(path.value(t), cfg.eps);
        return envelope * lz_geodesic_hamiltonian(path.theta(t));
    };

    const Spinor target = eig2(lz_hamiltonian(cfg.x_f, cfg.eps)).ground;
    Spinor psi = geodesic ? eig2(lz_geodesic_hamiltonian(path.theta_i())).ground
                          : eig2(lz_hamiltonian(cfg.x_i, cfg.eps)).ground;

    const auto spans = spans_for(cfg);
    Trajectory tr;
    PhaseErrorAccumulator acc;
    double gap = 0.0;
    const auto record = [&](double t) {
        tr.times.push_back(t);
        tr.fidelity.push_back(fidelity(target, psi));
        tr.gap.push_back(gap);
        tr.re_phase.push_back(std::cos(acc.phase()));
        tr.im_phase.push_back(std::sin(acc.phase()));
        tr.err.push_back(acc.error());
    };

    {
        const Eigen2 e0 = eig2(generator(0.0, spans.front().envelope));
        gap = e0.e_plus - e0.e_minus;
        record(0.0);
    }

    std::int64_t step = 0;
    for (std::size_t si = 0; si < spans.size(); ++si) {
        const Span& sp = spans[si];
        const bool pulse = sp.width > 0.0;
        const double len = pulse ? sp.width : sp.t1 - sp.t0;
        const std::int64_t n = step_count(len, cfg.dt);
        const double h = len / static_cast<double>(n);
        const double start = pulse ? sp.centre - 0.5 * sp.width : sp.t0;
        for (std::int64_t q = 0; q < n; ++q) {
            const double t_mid = start + (static_cast<double>(q) + 0.5) * h;
            const Herm2 H = generator(t_mid, sp.envelope);
            psi = expm_herm2(H, h) * psi;
            if (!std::isfinite(psi.up.real()) || !std::isfinite(psi.up.imag()) ||
                !std::isfinite(psi.down.real()) || !std::isfinite(psi.down.imag())) {
                std::ostringstream msg;
                msg << "lz: non-finite state at step " << step << " (t = " << t_mid << ")";
                throw NumericalError(msg.str());
            }
            tr.max_norm_defect = std::max(tr.max_norm_defect, std::abs(psi.norm_sq() - 1.0));
            const Eigen2 e = eig2(H);
            gap = e.e_plus - e.e_minus;
            acc.advance(h / cfg.T, (e.e_minus - e.e_plus) * h);
            ++step;
            const bool last = (si + 1 == spans.size()) && (q + 1 == n);
            if (last || step % cfg.trace_stride == 0) record(q + 1 == n ? sp.t1 : sp.t0 + (q + 1) * h);
        }
    }
    tr.final_state = psi;
    return tr;
}

void Trajectory::write_csv(std::ostream& os) const {
    os << "t,fidelity,gap,re_phase,im_phase,err\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        os << format_double(times[i]) << ',' << format_double(fidelity[i]) << ','
           << format_double(gap[i]) << ',' << format_double(re_phase[i]) << ','
           << format_double(im_phase[i]) << ',' << format_double(err[i]) << '\n';
    }
}

}  // namespace quench
