#include "quench/freefermion.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "quench/adiabatic_error.hpp"
#include "quench/errors.hpp"
#include "quench/parallel.hpp"

namespace quench {

KMode kmode(double k, double gamma, double h) {
    KMode m;
    m.k = k;
    m.a_k = h - std::cos(k);
    m.delta_k = gamma * std::sin(k);
    m.theta_k = std::atan2(m.delta_k, m.a_k);
    m.e_k = std::hypot(m.a_k, m.delta_k);
    return m;
}

std::vector<double> momentum_grid(int n_spins) {
    if (n_spins < 2 || n_spins % 2 != 0) {
        std::ostringstream msg;
        msg << "number of spins must be even and >= 2, got " << n_spins;
        throw ValidationError(msg.str());
    }
    std::vector<double> ks;
    ks.reserve(n_spins / 2);
    for (int m = 1; m <= n_spins / 2; ++m) ks.push_back((2.0 * m - 1.0) * std::numbers::pi / n_spins);
    return ks;
}

Herm2 kmode_hamiltonian(double k, double gamma, double h) {
    const double a = h - std::cos(k);
    const double delta = gamma * std::sin(k);
    return {0.0, Vec3{-2.0 * delta, 0.0, -2.0 * a}};
}

GroundExcited ground_excited(double k, double gamma, double h) {
    const double theta = kmode(k, gamma, h).theta_k;
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    return {Spinor{cplx{c, 0.0}, cplx{s, 0.0}}, Spinor{cplx{-s, 0.0}, cplx{c, 0.0}}};
}

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::AnisotropyLine: return "anisotropy";
        case Regime::GaplessLine: return "gapless";
        case Regime::IsingLine: return "ising";
    }
    return "?";
}

Regime parse_regime(std::string_view name) {
    if (name == "anisotropy") return Regime::AnisotropyLine;
    if (name == "gapless") return Regime::GaplessLine;
    if (name == "ising") return Regime::IsingLine;
    throw ValidationError("unknown regime '" + std::string(name) +
                          "' (expected anisotropy, gapless or ising)");
}

ChainConfig ChainConfig::defaults(Regime regime) {
    ChainConfig c;
    c.regime = regime;
    switch (regime) {
        case Regime::AnisotropyLine:
            c.gamma_i = -1.0, c.gamma_f = 1.0, c.h_i = c.h_f = 0.5;
            break;
        case Regime::GaplessLine:
            c.gamma_i = -1.0, c.gamma_f = 1.0, c.h_i = c.h_f = 1.0;
            break;
        case Regime::IsingLine:
            c.gamma_i = c.gamma_f = 1.0, c.h_i = 10.0, c.h_f = 0.0;
            break;
    }
    return c;
}

ChainConfig ChainConfig::with_total_time(double total) const {
    ChainConfig c = *this;
    c.T = total;
    if (kicks) c.kicks = KickTrain(kicks->n_kicks(), total, kicks->delta_t());
    return c;
}

void ChainConfig::validate() const {
    momentum_grid(n_spins);
    if (!(T > 0.0) || !std::isfinite(T)) throw ValidationError("chain: T must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("chain: dt must be positive");
    if ((strategy == Strategy::GeoJump) != kicks.has_value())
        throw ValidationError("chain: a kick train is required for geojump and only for geojump");
    if (kicks && std::abs(kicks->total_time() - T) > 1e-12 * T)
        throw ValidationError("chain: kick train total time differs from T");
    if (sweeps_gamma()) {
        if (h_i != h_f)
            throw ValidationError("chain: the " + std::string(to_string(regime)) +
                                  " regime holds h fixed (h_i must equal h_f)");
        if (regime == Regime::AnisotropyLine && !(std::abs(h_i) < 1.0))
            throw ValidationError("chain: the anisotropy line needs |h| < 1");
        if (regime == Regime::GaplessLine && h_i != 1.0)
            throw ValidationError("chain: the gapless line needs h = 1");
    } else if (gamma_i != 1.0 || gamma_f != 1.0) {
        throw ValidationError("chain: the ising regime fixes gamma = 1");
    }
}

Schedule mode_schedule(double k, const ChainConfig& cfg) {
    if (cfg.sweeps_gamma()) {
        if (cfg.strategy == Strategy::Lin)
            return linear_schedule(ControlParam::Gamma, cfg.gamma_i, cfg.gamma_f, cfg.T);
        return xy_geodesic_schedule(k, XYSweep::VaryGamma, cfg.gamma_i, cfg.gamma_f, cfg.h_i, cfg.T);
    }
    if (cfg.strategy == Strategy::Lin) return linear_schedule(ControlParam::H, cfg.h_i, cfg.h_f, cfg.T);
    return xy_geodesic_schedule(k, XYSweep::VaryH, cfg.h_i, cfg.h_f, cfg.gamma_i, cfg.T);
}

namespace {

struct Evolution {
    Unitary2 U;
    double err = 0.0;
};

[[noreturn]] void non_finite(double k, std::int64_t step, double t) {
    std::ostringstream msg;
    msg << "chain: non-finite control value for mode k = " << k << " at step " << step
        << " (t = " << t << ")";
    throw NumericalError(msg.str());
}

Evolution propagate(double k, const ChainConfig& cfg) {
    cfg.validate();
    const Schedule path = mode_schedule(k, cfg);
    Evolution ev;
    PhaseErrorAccumulator acc;
    std::int64_t step = 0;

    const double lz_scale = 1.0 / cfg.T;
    const double ck = std::cos(k);
    const double sk = std::sin(k);
    const bool gamma_sweep = cfg.sweeps_gamma();
    const auto advance = [&](double t_mid, double h, double envelope) {
        // H_k = -2 (a_k Z + Delta_k X)
        const double p = path.value(t_mid);
        const double a = gamma_sweep ? cfg.h_i - ck : p - ck;
        const double delta = (gamma_sweep ? p : cfg.gamma_i) * sk;
        const double dx = -2.0 * envelope * delta;
        const double dz = -2.0 * envelope * a;
        if (!std::isfinite(dx) || !std::isfinite(dz)) non_finite(k, step, t_mid);
        // exp(-i h d.sigma) = cos(r h) I - i sin(r h) d.sigma / r, with d_y = 0
        const double r = std::sqrt(dx * dx + dz * dz);
        const double co = std::cos(r * h);
        const double sn = std::sin(r * h);
        const double sr = r > 0.0 ? sn / r : h;
        const Unitary2 step_u{Mat2{cplx{co, -sr * dz}, cplx{0.0, -sr * dx}, cplx{0.0, -sr * dx},
                                   cplx{co, sr * dz}}};
        ev.U = step_u * ev.U;
        // E0 - E1 = -2 r, so the phase turns by exp(-2 i r h)
        acc.advance(h * lz_scale, -2.0 * r * h, cplx{co * co - sn * sn, -2.0 * co * sn});
        ++step;
    };

    if (!cfg.kicks) {
        const std::int64_t n = step_count(cfg.T, cfg.dt);
        const double h = cfg.T / static_cast<double>(n);
        for (std::int64_t q = 0; q < n; ++q) advance((static_cast<double>(q) + 0.5) * h, h, 1.0);
    } else {
        for (const auto& iv : cfg.kicks->partition()) {
            if (iv.kick < 0) {
                acc.hold((iv.t1 - iv.t0) / cfg.T);
                continue;
            }
            // step from the nominal width and centre: t1 - t0 loses digits when t_j >> delta_t
            const double width = cfg.kicks->delta_t();
            const double centre = cfg.kicks->kick_times()[iv.kick];
            const std::int64_t n = step_count(width, cfg.dt);
            const double h = width / static_cast<double>(n);
            const double first = 0.5 - 0.5 * static_cast<double>(n);
            for (std::int64_t q = 0; q < n; ++q)
                advance(centre + (first + static_cast<double>(q)) * h, h, cfg.kicks->amplitude());
        }
    }
    ev.err = acc.error();
    return ev;
}

std::vector<double> kick_thetas(const Schedule& path, const KickTrain& kicks) {
    std::vector<double> thetas;
    thetas.reserve(kicks.n_kicks());
    for (double lambda : kicks.kick_fractions()) thetas.push_back(path.theta_at_fraction(lambda));
    return thetas;
}

// Generator of one kick: the geodesic Hamiltonian at the kick angle.
Herm2 kick_generator(double k, const ChainConfig& cfg, const Schedule& path, double theta) {
    const double p = path.value_from_theta(theta);
    return cfg.sweeps_gamma() ? kmode_hamiltonian(k, p, cfg.h_i) : kmode_hamiltonian(k, cfg.gamma_i, p);
}

Evolution propagate_kicks(double k, const ChainConfig& cfg) {
    cfg.validate();
    if (!cfg.kicks) throw ValidationError("chain: the exact kick product applies to geojump only");
    const Schedule path = mode_schedule(k, cfg);
    const auto thetas = kick_thetas(path, *cfg.kicks);

    Evolution ev;
    if (cfg.sweeps_gamma()) {
        // each kick has area pi/2: exp(-i (pi/2) H_geo(theta_j))
        for (double th : thetas) ev.U = expm_herm2(kick_generator(k, cfg, path, th), 0.5 * std::numbers::pi) * ev.U;
    } else {
        ev.U = evolve_mode_kicks_exact(k, thetas, cfg.gamma_i);
    }

    // delta-limit phase bookkeeping: constant between kicks, a jump of
    // -(pi/2) * gap at each kick
    PhaseErrorAccumulator acc;
    double last = 0.0;
    const auto& fr = cfg.kicks->kick_fractions();
    for (std::size_t j = 0; j < thetas.size(); ++j) {
        acc.hold(fr[j] - last);
        last = fr[j];
        const Herm2 H = kick_generator(k, cfg, path, thetas[j]);
        acc.advance(0.0, -0.5 * std::numbers::pi * 2.0 * H.d.norm());
    }
    acc.hold(1.0 - last);
    ev.err = acc.error();
    return ev;
}

}  // namespace

Unitary2 evolve_mode_stepwise(double k, const ChainConfig& cfg) { return propagate(k, cfg).U; }

Unitary2 evolve_mode_kicks_exact(double k, std::span<const double> thetas, double gamma) {
    Unitary2 U;
    const double sk = std::sin(k);
    for (std::size_t j = 0; j < thetas.size(); ++j) {
        const double c = std::cos(thetas[j]);
        if (std::abs(c) < 1e-12) {
            std::ostringstream msg;
            msg << "evolve_mode_kicks_exact: theta_" << j + 1 << " = " << thetas[j]
                << " sits on a pole of tan";
            throw ValidationError(msg.str());
        }
        const double t = std::tan(thetas[j]);
        const double r = std::sqrt(gamma * gamma + t * t);
        const double alpha = std::numbers::pi * sk * r;
        U = su2_rotation(Vec3{gamma / r, 0.0, t / r}, alpha) * U;
    }
    return U;
}

Unitary2 kick_product(double k, const ChainConfig& cfg) { return propagate_kicks(k, cfg).U; }

double excitation_prob(const Unitary2& U, double k, double final_gamma, double final_h,
                       double initial_gamma, double initial_h) {
    const Spinor g_i = ground_excited(k, initial_gamma, initial_h).ground;
    const Spinor e_f = ground_excited(k, final_gamma, final_h).excited;
    return fidelity(e_f, U * g_i);
}

double defect_density(std::span<const double> pk) {
    if (pk.empty()) throw ValidationError("defect_density: empty momentum grid");
    double sum = 0.0;
    for (double p : pk) sum += p;
    return sum / (2.0 * static_cast<double>(pk.size()));
}

ModeResult solve_mode(double k, const ChainConfig& cfg, Evolver evolver) {
    const Evolution ev = (evolver == Evolver::ExactKicks) ? propagate_kicks(k, cfg) : propagate(k, cfg);
    ModeResult r;
    r.k = k;
    r.p_k = excitation_prob(ev.U, k, cfg.gamma_f, cfg.h_f, cfg.gamma_i, cfg.h_i);
    r.err_k = ev.err;
    return r;
}

std::vector<DefectResult> run_chain(const ChainConfig& base, std::span<const double> rates,
                                    Evolver evolver, int workers) {
    const auto ks = momentum_grid(base.n_spins);
    std::vector<ChainConfig> configs;
    configs.reserve(rates.size());
    for (double rate : rates) {
        if (!(rate > 0.0) || !std::isfinite(rate))
            throw ValidationError("chain: quench rates must be positive");
        configs.push_back(base.with_total_time(1.0 / rate));
        configs.back().validate();
    }
    if (evolver == Evolver::ExactKicks && base.strategy != Strategy::GeoJump)
        throw ValidationError("chain: the exact kick product applies to geojump only");

    std::vector<ModeResult> slots(rates.size() * ks.size());
    parallel_for(slots.size(), workers, [&](std::size_t idx) {
        const std::size_t r = idx / ks.size();
        const std::size_t m = idx % ks.size();
        slots[idx] = solve_mode(ks[m], configs[r], evolver);
    });

    std::vector<DefectResult> out(rates.size());
    for (std::size_t r = 0; r < rates.size(); ++r) {
        out[r].rate = rates[r];
        out[r].modes.assign(slots.begin() + static_cast<std::ptrdiff_t>(r * ks.size()),
                            slots.begin() + static_cast<std::ptrdiff_t>((r + 1) * ks.size()));
        std::vector<double> pk;
        pk.reserve(ks.size());
        for (const auto& m : out[r].modes) pk.push_back(m.p_k);
        out[r].n_defect = defect_density(pk);
    }
    return out;
}

}  // namespace quench
