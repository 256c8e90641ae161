// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "quench/adiabatic_error.hpp"
#include "quench/analysis.hpp"
#include "quench/freefermion.hpp"
#include "quench/lz.hpp"
#include "quench/parallel.hpp"

using namespace quench;
using std::numbers::pi;

namespace {

int failures = 0;
const int kWorkers = hardware_workers();

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void info(const std::string& s) {
    std::printf("      %s\n", s.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::vector<double> log_rates(double lo, double hi, int n) {
    std::vector<double> r;
    for (int i = 0; i < n; ++i) r.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return r;
}

ChainConfig ising(Strategy s, double dt) {
    ChainConfig c = ChainConfig::defaults(Regime::IsingLine);
    c.strategy = s;
    c.dt = dt;
    return c;
}

ChainConfig jump(ChainConfig c, int kicks, double width, double T = 1.0) {
    c.strategy = Strategy::GeoJump;
    c.T = T;
    c.kicks = KickTrain(kicks, T, width);
    return c;
}

double n_defect(const ChainConfig& c, double rate, Evolver ev = Evolver::Stepwise) {
    const double r[] = {rate};
    return run_chain(c, r, ev, kWorkers).front().n_defect;
}

double rel_spread(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return (*hi - *lo) / *hi;
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) ma += a[i], mb += b[i];
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

ScalingFit chain_fit(const ChainConfig& c, const std::vector<double>& rates, std::vector<double>* ns = nullptr) {
    const auto res = run_chain(c, rates, Evolver::Stepwise, kWorkers);
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : res) {
        pts.emplace_back(r.rate, r.n_defect);
        if (ns) ns->push_back(r.n_defect);
    }
    return fit_power_law(pts, rates.front(), rates.back());
}

std::string fit_text(const ScalingFit& f) {
    return fmt("exponent %.4f", f.exponent) + fmt(", r^2 %.6f", f.r_squared) + fmt(", window [%g", f.window_min) +
           fmt(", %g]", f.window_max) + ", " + std::to_string(f.points) + " points";
}

void criterion_1() {
    const ChainConfig c = ising(Strategy::Lin, 1e-3);
    // dt-halving check at the two fastest window rates
    double worst = 0.0;
    for (double rate : {3e-2, 1e-2}) {
        ChainConfig fine = c;
        fine.dt = 5e-4;
        const double a = n_defect(c, rate), b = n_defect(fine, rate);
        worst = std::max(worst, std::abs(a - b) / b);
    }
    info(fmt("dt-halving (1e-3 vs 5e-4): max relative change of n = %.2e", worst));
    const ScalingFit f = chain_fit(c, log_rates(1e-3, 3e-2, 9));
    const bool ok = worst < 1e-3 && std::abs(f.exponent - 0.5) <= 0.1 && f.r_squared > 0.99;
    report(1, "KZ linear exponent 1/2 +- 0.1", ok, fit_text(f));
}

void criterion_2() {
    const ChainConfig c = ising(Strategy::Geo, 1e-3);
    ChainConfig fine = c;
    fine.dt = 5e-4;
    const double a = n_defect(c, 0.5), b = n_defect(fine, 0.5);
    info(fmt("dt-halving at rate 0.5: relative change of n = %.2e", std::abs(a - b) / b));
    std::vector<double> ns;
    const auto rates = log_rates(0.03, 0.5, 9);
    const ScalingFit f = chain_fit(c, rates, &ns);
    for (std::size_t i = 1; i < rates.size(); ++i)
        info(fmt("local slope at rate %.3g: ", std::sqrt(rates[i] * rates[i - 1])) +
             fmt("%.3f", std::log(ns[i] / ns[i - 1]) / std::log(rates[i] / rates[i - 1])));
    const bool ok = std::abs(f.exponent - 2.0 / 3.0) <= 0.1 && f.r_squared > 0.99;
    report(2, "geodesic exponent 2/3 +- 0.1", ok, fit_text(f));
}

void criterion_3() {
    const ChainConfig c = jump(ising(Strategy::GeoJump, 1e-4), 5, 1e-4);
    const auto rates = log_rates(1e-4, 1e2, 13);
    std::vector<double> step, exact;
    for (const auto& r : run_chain(c, rates, Evolver::Stepwise, kWorkers)) step.push_back(r.n_defect);
    for (const auto& r : run_chain(c, rates, Evolver::ExactKicks, kWorkers)) exact.push_back(r.n_defect);
    const double s1 = rel_spread(step), s2 = rel_spread(exact);
    report(3, "DRIP flatness over 6 decades", s1 < 1e-8 && s2 == 0.0,
           fmt("n = %.6f", exact.front()) + fmt(", stepwise spread %.2e", s1) + fmt(", exact spread %.1e", s2));
}

void criterion_4() {
    ChainConfig base = ising(Strategy::GeoJump, 1e-4);
    base.h_i = 1.05;
    base.h_f = 0.95;
    const double target = plateau_asymptotic(1.0, base.h_i, base.h_f);
    const auto n_at = [&](int kicks) { return n_defect(jump(base, kicks, 1e-4), 1.0, Evolver::ExactKicks); };
    const double n200 = n_at(200);
    const double dev = std::abs(n200 - target) / target;
    const bool plateau_ok = dev < 0.05;
    info(fmt("n(200) = %.6e", n200) + fmt(" vs (pi^4/32) 0.01 = %.6f", target) + fmt(" (relative deviation %.3f)", dev));

    const double n400 = n_at(400);
    std::vector<std::pair<double, double>> conv;
    for (int k : {10, 20, 40, 80}) {
        const double d = std::abs(n_at(k) - n400);
        conv.emplace_back(k, d);
        info("|n(" + std::to_string(k) + ") - n(400)| = " + fmt("%.4e", d));
    }
    const ScalingFit cf = fit_power_law(conv, 10, 80);
    const bool conv_ok = cf.exponent >= -2.5 && cf.exponent <= -1.5;
    info(fmt("convergence slope %.3f", cf.exponent) + fmt(" (r^2 %.4f), required [-2.5, -1.5]", cf.r_squared));

    const ChainConfig j = jump(base, 200, 1e-4);
    const double pk = solve_mode(pi / 2, j, Evolver::ExactKicks).p_k;
    const double phi = phi_y_amplitude(pi / 2, 1.0, base.h_i, base.h_f);
    const double want = std::pow(std::sin(phi / 2), 2);
    const bool phi_ok = std::abs(pk - want) < 0.01;
    info(fmt("k = pi/2: p_k = %.3e", pk) + fmt(" vs sin^2(Phi_y/2) = %.4f", want));

    report(4, "plateau formula and 1/N^2 convergence", plateau_ok && conv_ok && phi_ok,
           std::string("plateau ") + (plateau_ok ? "ok" : "off") + ", convergence " + (conv_ok ? "ok" : "off") +
               ", Phi_y " + (phi_ok ? "ok" : "off"));
}

void criterion_5() {
    double worst = 0.0;
    int combos = 0;
    for (int kicks : {1, 5, 20, 50})
        for (double k : {0.05, 0.7, 1.5, 2.4, 3.1}) {
            const ChainConfig c = jump(ising(Strategy::GeoJump, 1e-4), kicks, 1e-4);
            const double a = solve_mode(k, c, Evolver::ExactKicks).p_k;
            const double b = solve_mode(k, c, Evolver::Stepwise).p_k;
            worst = std::max(worst, std::abs(a - b));
            ++combos;
        }
    report(5, "exact kick product vs stepwise", worst < 1e-5 && combos == 20,
           std::to_string(combos) + " (k, N) combinations, max |dp_k| = " + fmt("%.2e", worst));
}

LZConfig lz(Strategy s, double T, int kicks = 0) {
    LZConfig c;
    c.strategy = s;
    c.T = T;
    c.dt = 1e-4;
    if (kicks > 0) c.kicks = KickTrain(kicks, T, c.dt);
    return c;
}

void criterion_6() {
    const double jf = evolve_lz(lz(Strategy::GeoJump, 0.5, 8)).final_fidelity();
    const double gf = evolve_lz(lz(Strategy::Geo, 0.5)).final_fidelity();
    report(6, "LZ geo-jump fidelity at T = 0.5", jf >= 0.99 && gf < jf,
           fmt("geojump (8 kicks) %.6f", jf) + fmt(", geo %.6f", gf));
}

void criterion_7() {
    const double e = evolve_lz(lz(Strategy::GeoJump, 0.5, 8)).final_error();
    std::vector<PhaseSample> flat;
    for (int i = 0; i <= 1000; ++i) flat.push_back({i / 1000.0, -0.5, -0.5});
    const double worst = adiabatic_error(flat, 7.0).back();
    report(7, "generalized adiabaticity error", e < 1e-3 && std::abs(worst - 1.0) <= 1e-9,
           fmt("geojump eps_01(1) = %.2e", e) + fmt(", constant phase eps_01(1) = %.12f", worst));
}

void criterion_8() {
    ChainConfig c = ising(Strategy::GeoJump, 1e-4);
    c.h_i = 0.005;
    c.h_f = -0.005;
    c = jump(c, 50, 1e-4);
    const double r[] = {1.0};
    const auto res = run_chain(c, r, Evolver::ExactKicks, kWorkers).front();
    std::vector<double> pk, s2;
    for (const auto& m : res.modes) {
        pk.push_back(m.p_k);
        s2.push_back(std::sin(m.k) * std::sin(m.k));
    }
    const double corr = correlation(pk, s2);
    report(8, "sin^2 k envelope", corr > 0.99, fmt("corr(p_k, sin^2 k) = %.5f", corr) + " for h 0.005 -> -0.005, 50 kicks");
}

void criterion_9() {
    const std::vector<double> Ts{0.1, 0.5, 1.0, 10.0};
    bool ok = true;
    std::string detail;
    for (const auto& [kicks, width] : std::vector<std::pair<int, double>>{{5, 0.01}, {1, 0.1}}) {
        std::vector<double> rates;
        for (double T : Ts) rates.push_back(1.0 / T);
        const ChainConfig c = jump(ising(Strategy::GeoJump, 1e-4), kicks, width, Ts.front());
        std::vector<double> ns;
        for (const auto& r : run_chain(c, rates, Evolver::Stepwise, kWorkers)) ns.push_back(r.n_defect);
        const double s = rel_spread(ns);
        ok = ok && s > 0.1;
        detail += (detail.empty() ? "" : "; ") + fmt("width %g", width) + ", " + std::to_string(kicks) +
                  " kicks: spread " + fmt("%.3f", s);
        std::string row;
        for (std::size_t i = 0; i < Ts.size(); ++i) row += fmt(" T=%g:", Ts[i]) + fmt(" %.5f", ns[i]);
        info(fmt("width %g", width) + row);
    }
    report(9, "finite pulse width restores rate dependence", ok, detail);
}

void criterion_10() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    bool unitary = true, completeness = true, metric = true, geodesic = true, norm = true, nconv = true;

    for (int i = 0; i < 1000; ++i) {
        const Herm2 h{oracle::rand_uniform(rng, -5, 5),
                      Vec3{oracle::rand_uniform(rng, -5, 5), oracle::rand_uniform(rng, -5, 5),
                           oracle::rand_uniform(rng, -5, 5)}};
        const Unitary2 u = expm_herm2(h, oracle::rand_uniform(rng, -10, 10));
        unitary = unitary && u.unitarity_defect() < 1e-12 && std::abs(std::abs(u.det()) - 1.0) < 1e-12;
    }
    for (Strategy s : {Strategy::Lin, Strategy::Geo}) {
        const ChainConfig c = [&] {
            ChainConfig x = ising(s, 1e-3);
            x.T = 5.0;
            return x;
        }();
        for (double k : {0.1, 1.0, 2.0, 3.0}) {
            const Unitary2 u = evolve_mode_stepwise(k, c);
            unitary = unitary && u.unitarity_defect() < 1e-12;
            const double p = excitation_prob(u, k, c.gamma_f, c.h_f, c.gamma_i, c.h_i);
            const double stay =
                fidelity(ground_excited(k, c.gamma_f, c.h_f).ground, u * ground_excited(k, c.gamma_i, c.h_i).ground);
            completeness = completeness && std::abs(p + stay - 1.0) < 1e-12;
        }
    }
    for (Strategy s : {Strategy::Lin, Strategy::Geo})
        norm = norm && evolve_lz(lz(s, 5.0)).max_norm_defect < 1e-9;
    norm = norm && evolve_lz(lz(Strategy::GeoJump, 5.0, 8)).max_norm_defect < 1e-9;

    for (int i = 0; i < 20; ++i) {
        const double k = oracle::rand_uniform(rng, 0.1, 3.0), g = oracle::rand_uniform(rng, -1.5, 1.5);
        const double h = oracle::rand_uniform(rng, -1.5, 1.5);
        if (std::abs(h - std::cos(k)) < 0.05) continue;
        const double d = 1e-4;
        const double fd = (1.0 - fidelity(ground_excited(k, g - d, h).ground, ground_excited(k, g + d, h).ground)) /
                          (4 * d * d);
        metric = metric && std::abs(fs_metric_gamma(k, g, h) - fd) < 1e-6 * (1.0 + fd);
    }
    for (double k : {0.3, 1.2, 2.5}) {
        const Schedule s = xy_geodesic_schedule(k, XYSweep::VaryGamma, -1.0, 1.0, 0.5, 2.0);
        const double ref = fs_metric_gamma(k, s.value(0.0), 0.5) * std::pow(s.rate(0.0), 2);
        for (int i = 1; i <= 50; ++i) {
            const double t = 2.0 * i / 50.0;
            const double v = fs_metric_gamma(k, s.value(t), 0.5) * std::pow(s.rate(t), 2);
            geodesic = geodesic && std::abs(v - ref) <= 1e-6 * ref;
        }
    }
    {
        ChainConfig a = ising(Strategy::Lin, 1e-3), b = a;
        b.n_spins = 500;
        const double na = n_defect(a, 1e-2), nb = n_defect(b, 1e-2);
        nconv = std::abs(na - nb) < 1e-3;
        info(fmt("N-convergence (linear, rate 0.01): |n(250) - n(500)| = %.2e", std::abs(na - nb)));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = unitary && completeness && metric && geodesic && norm && nconv && secs < 60.0;
    std::string detail = std::string("unitarity ") + (unitary ? "ok" : "off") + ", norm " + (norm ? "ok" : "off") +
                         ", completeness " + (completeness ? "ok" : "off") + ", metric " + (metric ? "ok" : "off") +
                         ", geodesic speed " + (geodesic ? "ok" : "off") + ", N-convergence " + (nconv ? "ok" : "off") +
                         fmt(", %.1f s", secs);
    report(10, "property suites", ok, detail);
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                                      criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), "aborted", false, e.what());
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
