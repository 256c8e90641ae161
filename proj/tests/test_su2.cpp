#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "quench/errors.hpp"
#include "quench/su2.hpp"

using namespace quench;
using std::numbers::pi;

namespace {

double mat_diff(const Mat2& a, const Mat2& b) {
    double w = 0.0;
    for (int i = 0; i < 4; ++i) w = std::max(w, std::abs(a[i] - b[i]));
    return w;
}

Herm2 random_herm(std::mt19937_64& rng, double scale = 3.0) {
    return {oracle::rand_uniform(rng, -scale, scale),
            Vec3{oracle::rand_uniform(rng, -scale, scale), oracle::rand_uniform(rng, -scale, scale),
                 oracle::rand_uniform(rng, -scale, scale)}};
}

double residual(const Herm2& h, const Spinor& v, double e) {
    const Mat2 m = h.dense();
    const cplx r0 = m[0] * v.up + m[1] * v.down - e * v.up;
    const cplx r1 = m[2] * v.up + m[3] * v.down - e * v.down;
    return std::sqrt(std::norm(r0) + std::norm(r1));
}

}  // namespace

TEST_CASE("dense round trip of Bloch form") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const Herm2 h = random_herm(rng);
        const Herm2 back = Herm2::from_dense(h.dense());
        CHECK(back.c == doctest::Approx(h.c).epsilon(1e-15));
        CHECK(back.d.x == doctest::Approx(h.d.x).epsilon(1e-15));
        CHECK(back.d.y == doctest::Approx(h.d.y).epsilon(1e-15));
        CHECK(back.d.z == doctest::Approx(h.d.z).epsilon(1e-15));
    }
}

TEST_CASE("eig2 on diagonal and Pauli generators") {
    const Eigen2 e = eig2({0.0, Vec3{0.0, 0.0, -1.0}});
    CHECK(e.e_minus == -1.0);
    CHECK(e.e_plus == 1.0);
    CHECK(e.ground == kSpinUp);

    const Eigen2 x = eig2({0.0, Vec3{1.0, 0.0, 0.0}});
    CHECK(x.e_minus == doctest::Approx(-1.0));
    const double r = 1.0 / std::sqrt(2.0);
    // ties go to the up component, which is made real-positive
    CHECK(std::abs(x.ground.up - cplx{r}) < 1e-15);
    CHECK(std::abs(x.ground.down - cplx{-r}) < 1e-15);
}

TEST_CASE("eig2 matches a dense eigensolver") {
    const Herm2 h{0.0, Vec3{3.0, 0.0, 4.0}};
    const Eigen2 e = eig2(h);
    CHECK(e.e_minus == doctest::Approx(-5.0).epsilon(1e-15));
    CHECK(e.e_plus == doctest::Approx(5.0).epsilon(1e-15));
    const auto ref = oracle::dense_eig(h.dense());
    CHECK(fidelity(e.ground, Spinor{ref.v_lo[0], ref.v_lo[1]}) == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const Herm2 g = random_herm(rng);
        const Eigen2 ev = eig2(g);
        const auto dref = oracle::dense_eig(g.dense());
        CHECK(ev.e_minus <= ev.e_plus);
        CHECK(ev.e_minus == doctest::Approx(dref.lo).epsilon(1e-12));
        CHECK(ev.e_plus == doctest::Approx(dref.hi).epsilon(1e-12));
        CHECK(fidelity(ev.ground, Spinor{dref.v_lo[0], dref.v_lo[1]}) > 1.0 - 1e-12);
        CHECK(residual(g, ev.ground, ev.e_minus) < 1e-11);
        CHECK(residual(g, ev.excited, ev.e_plus) < 1e-11);
        CHECK(std::abs(inner(ev.ground, ev.excited)) < 1e-12);
        CHECK(ev.ground.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
        // gauge: largest amplitude real-positive
        const cplx big = std::abs(ev.ground.up) >= std::abs(ev.ground.down) ? ev.ground.up : ev.ground.down;
        CHECK(big.imag() == 0.0);
        CHECK(big.real() > 0.0);
        const Eigen2 again = eig2(g);
        CHECK(again.ground == ev.ground);
        CHECK(again.excited == ev.excited);
    }
}

TEST_CASE("eig2 degenerate generator returns the canonical basis") {
    const Eigen2 e = eig2({0.7, Vec3{}});
    CHECK(e.e_minus == 0.7);
    CHECK(e.e_plus == 0.7);
    CHECK(e.ground == kSpinUp);
    CHECK(e.excited == kSpinDown);
}

TEST_CASE("expm_herm2 closed form") {
    CHECK(max_abs_diff(expm_herm2(Herm2{}, 3.1), Unitary2::identity()) == 0.0);

    // exp(-i pi X / 2) = -i X
    const Unitary2 u = expm_herm2({0.0, Vec3{0.5, 0.0, 0.0}}, pi);
    const Unitary2 ref{Mat2{cplx{}, cplx{0, -1}, cplx{0, -1}, cplx{}}};
    CHECK(max_abs_diff(u, ref) < 1e-15);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const Herm2 h = random_herm(rng, 2.0);
        const Unitary2 e = expm_herm2(h, 0.37);
        CHECK(mat_diff(e.entries(), oracle::expm_series(h.dense(), 0.37)) < 1e-10);
        CHECK(e.unitarity_defect() < 1e-12);
        CHECK(std::abs(std::abs(e.det()) - 1.0) < 1e-12);
        const double a = oracle::rand_uniform(rng, -2, 2), b = oracle::rand_uniform(rng, -2, 2);
        CHECK(max_abs_diff(expm_herm2(h, a) * expm_herm2(h, b), expm_herm2(h, a + b)) < 1e-11);
    }
}

TEST_CASE("unitarity holds for large arguments") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        const Herm2 h = random_herm(rng, 1e3);
        CHECK(expm_herm2(h, oracle::rand_uniform(rng, -50, 50)).unitarity_defect() < 1e-12);
    }
}

TEST_CASE("su2_rotation") {
    CHECK(max_abs_diff(su2_rotation(Vec3{0, 0, 1}, 0.0), Unitary2::identity()) == 0.0);

    const Unitary2 ix = su2_rotation(Vec3{1, 0, 0}, pi / 2);
    const Unitary2 ref{Mat2{cplx{}, cplx{0, 1}, cplx{0, 1}, cplx{}}};
    CHECK(max_abs_diff(ix, ref) < 1e-15);
    const Spinor s = ix * kSpinUp;
    CHECK(std::abs(s.up) < 1e-15);
    CHECK(std::abs(s.down - cplx{0, 1}) < 1e-15);

    // gamma = 1, theta = pi/4: exp(+i alpha n.sigma) = exp(-i H) with H = -alpha n.sigma
    const double g = 1.0, t = std::tan(pi / 4), r = std::sqrt(g * g + t * t);
    const Vec3 n{g / r, 0.0, t / r};
    const double alpha = 0.83;
    CHECK(max_abs_diff(su2_rotation(n, alpha), expm_herm2({0.0, -alpha * n}, 1.0)) < 1e-12);

    CHECK_THROWS_AS(su2_rotation(Vec3{1.0, 1e-3, 0.0}, 0.1), ValidationError);
    CHECK_NOTHROW(su2_rotation(Vec3{1.0, 1e-6, 0.0}, 0.1));
}

TEST_CASE("fidelity") {
    const double r = 1.0 / std::sqrt(2.0);
    const Spinor plus{cplx{r}, cplx{r}};
    CHECK(fidelity(plus, plus) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fidelity(kSpinUp, kSpinDown) == 0.0);
    CHECK(fidelity(kSpinUp, plus) == doctest::Approx(0.5).epsilon(1e-15));
    const Spinor phased{cplx{0, r}, cplx{0, r}};
    CHECK(fidelity(plus, phased) == doctest::Approx(1.0).epsilon(1e-15));
    const Spinor a{cplx{0.6}, cplx{0, 0.8}};
    CHECK(fidelity(a, plus) == doctest::Approx(fidelity(plus, a)).epsilon(1e-15));
}

TEST_CASE("bloch_spinor") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        Vec3 m{oracle::rand_uniform(rng, -1, 1), oracle::rand_uniform(rng, -1, 1), oracle::rand_uniform(rng, -1, 1)};
        m = (1.0 / m.norm()) * m;
        const Spinor s = bloch_spinor(m);
        // <sigma> = m
        const cplx sx = std::conj(s.up) * s.down + std::conj(s.down) * s.up;
        const cplx sy = cplx{0, -1} * std::conj(s.up) * s.down + cplx{0, 1} * std::conj(s.down) * s.up;
        const double sz = std::norm(s.up) - std::norm(s.down);
        CHECK(sx.real() == doctest::Approx(m.x).epsilon(1e-12));
        CHECK(sy.real() == doctest::Approx(m.y).epsilon(1e-12));
        CHECK(sz == doctest::Approx(m.z).epsilon(1e-12));
    }
}
