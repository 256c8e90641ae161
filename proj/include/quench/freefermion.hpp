#pragma once

// Momentum-mode dynamics of the periodic XY chain in the even-parity sector.
//
// Each mode k > 0 is an independent two-level system
//   H_k = -2 (a_k Z + Delta_k X),  a_k = h - cos k,  Delta_k = gamma sin k,
// whose ground state is (cos(theta_k/2), sin(theta_k/2)) with
// tan(theta_k) = Delta_k / a_k.

#include <optional>
#include <span>
#include <vector>

#include "quench/schedule.hpp"
#include "quench/strategy.hpp"
#include "quench/su2.hpp"

namespace quench {

struct KMode {
    double k = 0.0;
    double a_k = 0.0;
    double delta_k = 0.0;
    double theta_k = 0.0;
    double e_k = 0.0;
};

KMode kmode(double k, double gamma, double h);

/// k_m = (2m - 1) pi / N, m = 1..N/2. N must be even and >= 2.
std::vector<double> momentum_grid(int n_spins);

Herm2 kmode_hamiltonian(double k, double gamma, double h);

struct GroundExcited {
    Spinor ground;
    Spinor excited;
};

GroundExcited ground_excited(double k, double gamma, double h);

enum class Regime {
    AnisotropyLine,  // gamma swept, |h| < 1 fixed
    GaplessLine,     // gamma swept, h = 1
    IsingLine,       // h swept, gamma = 1
};

std::string_view to_string(Regime r);
Regime parse_regime(std::string_view name);

enum class Evolver {
    Stepwise,    // midpoint-sampled exact exponentials on a dt grid
    ExactKicks,  // ordered product of delta-kick rotations (geojump only)
};

struct ChainConfig {
    int n_spins = 250;
    Regime regime = Regime::IsingLine;
    // gamma-swept regimes use gamma_i -> gamma_f at field h_i (= h_f);
    // the Ising line uses h_i -> h_f at gamma_i = gamma_f = 1.
    double gamma_i = 1.0;
    double gamma_f = 1.0;
    double h_i = 10.0;
    double h_f = 0.0;
    double T = 1.0;
    double dt = 1e-4;
    Strategy strategy = Strategy::Lin;
    std::optional<KickTrain> kicks;  // present iff strategy == GeoJump

    /// Endpoints used for each regime by default (gamma: -1 -> 1 at h = 0.5 or
    /// h = 1; Ising h: 10 -> 0).
    static ChainConfig defaults(Regime regime);

    [[nodiscard]] bool sweeps_gamma() const { return regime != Regime::IsingLine; }
    /// Same protocol at a different total time (the kick train keeps its count and width).
    [[nodiscard]] ChainConfig with_total_time(double T) const;

    void validate() const;
};

/// Schedule followed by mode k under cfg (linear ramp or the per-mode geodesic).
Schedule mode_schedule(double k, const ChainConfig& cfg);

/// Midpoint-sampled propagation of mode k. Between geo-jump pulses the
/// generator vanishes and those intervals are not stepped.
Unitary2 evolve_mode_stepwise(double k, const ChainConfig& cfg);

/// Ordered delta-kick product prod_j [cos a_j I + i sin a_j n(theta_j).sigma] with
/// a_j = pi sin k sqrt(gamma^2 + tan^2 theta_j), n = (gamma, 0, tan theta)/sqrt(...).
/// theta_j are h-chart angles. Throws ValidationError at a pole of tan, naming j.
Unitary2 evolve_mode_kicks_exact(double k, std::span<const double> thetas, double gamma);

/// Delta-kick product for mode k under a geojump config, for either sweep kind.
Unitary2 kick_product(double k, const ChainConfig& cfg);

/// |<e_f|U|g_i>|^2 with g_i the ground state at the initial parameters and
/// e_f the excited state at the final ones.
double excitation_prob(const Unitary2& U, double k, double final_gamma, double final_h,
                       double initial_gamma, double initial_h);

/// n = (1/N) sum_k p_k over the N/2 positive modes, i.e. (1/2 pi) int_0^pi p_k dk.
double defect_density(std::span<const double> pk);

struct ModeResult {
    double k = 0.0;
    double p_k = 0.0;
    double err_k = 0.0;  // eps_01(1) for the mode
};

/// Evolve one mode and measure its excitation probability and adiabatic error.
ModeResult solve_mode(double k, const ChainConfig& cfg, Evolver evolver = Evolver::Stepwise);

struct DefectResult {
    double rate = 0.0;  // 1 / T
    std::vector<ModeResult> modes;
    double n_defect = 0.0;
};

/// All modes of the chain for each total time 1/rate. Modes run on `workers`
/// threads; the reduction is in grid order, so output does not depend on the
/// worker count.
std::vector<DefectResult> run_chain(const ChainConfig& base, std::span<const double> rates,
                                    Evolver evolver, int workers);

}  // namespace quench
