#pragma once

// Landau-Zener two-level evolution under linear, geodesic and geo-jump driving.

#include <iosfwd>
#include <optional>
#include <vector>

#include "quench/schedule.hpp"
#include "quench/strategy.hpp"
#include "quench/su2.hpp"

namespace quench {

struct LZConfig {
    double eps = 0.1;
    double x_i = -10.0;
    double x_f = 10.0;
    double T = 1.0;
    double dt = 1e-4;
    Strategy strategy = Strategy::Lin;
    std::optional<KickTrain> kicks;  // present iff strategy == GeoJump
    int trace_stride = 1;            // record every n-th step (the last step is always kept)

    void validate() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> fidelity;  // vs ground state of H(x_f)
    std::vector<double> gap;       // E1 - E0 of the full generator, envelope included
    std::vector<double> re_phase;  // Re exp(i phi_01)
    std::vector<double> im_phase;  // Im exp(i phi_01)
    std::vector<double> err;       // eps_01(t / T)
    Spinor final_state;
    double max_norm_defect = 0.0;  // max | <psi|psi> - 1 | over all steps

    [[nodiscard]] std::size_t size() const { return times.size(); }
    [[nodiscard]] double final_fidelity() const { return fidelity.back(); }
    [[nodiscard]] double final_error() const { return err.back(); }

    /// Columns: t, fidelity, gap, re_phase, im_phase, err
    void write_csv(std::ostream& os) const;
};

/// H = (x X + eps Z) / 2
Herm2 lz_hamiltonian(double x, double eps);

/// Unit-gap geodesic form (sin(theta) X + cos(theta) Z) / 2.
Herm2 lz_geodesic_hamiltonian(double theta);

/// Piecewise-constant propagation with midpoint sampling. Pulse edges are
/// step boundaries, so the envelope is constant over every step.
Trajectory evolve_lz(const LZConfig& cfg);

}  // namespace quench
