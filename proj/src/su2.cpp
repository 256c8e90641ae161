#include "quench/su2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quench/errors.hpp"

namespace quench {

namespace {

constexpr cplx kI{0.0, 1.0};

Spinor fix_gauge(Spinor s) {
    const double au = std::abs(s.up);
    const double ad = std::abs(s.down);
    const cplx ref = (au >= ad) ? s.up : s.down;
    const double mag = std::abs(ref);
    if (mag == 0.0) return s;
    const cplx phase = std::conj(ref) / mag;
    s.up *= phase;
    s.down *= phase;
    // the reference amplitude is real by construction; drop rounding residue
    if (au >= ad)
        s.up = cplx{std::abs(s.up), 0.0};
    else
        s.down = cplx{std::abs(s.down), 0.0};
    return s;
}

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Mat2 Herm2::dense() const {
    return {cplx{c + d.z, 0.0}, cplx{d.x, -d.y}, cplx{d.x, d.y}, cplx{c - d.z, 0.0}};
}

Herm2 Herm2::from_dense(const Mat2& m) {
    const double a = m[0].real();
    const double b = m[3].real();
    const cplx off = 0.5 * (m[2] + std::conj(m[1]));
    return {0.5 * (a + b), Vec3{off.real(), off.imag(), 0.5 * (a - b)}};
}

Unitary2 Unitary2::adjoint() const {
    return Unitary2{Mat2{std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])}};
}

double Unitary2::unitarity_defect() const {
    const Unitary2 p = adjoint() * (*this);
    double worst = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            worst = std::max(worst, std::abs(p(r, c) - cplx{r == c ? 1.0 : 0.0, 0.0}));
    return worst;
}

Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
    const Mat2& x = a.m_;
    const Mat2& y = b.m_;
    return Unitary2{Mat2{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                         x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]}};
}

Spinor operator*(const Unitary2& u, const Spinor& s) {
    const Mat2& m = u.m_;
    return {m[0] * s.up + m[1] * s.down, m[2] * s.up + m[3] * s.down};
}

double max_abs_diff(const Unitary2& a, const Unitary2& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    return worst;
}

Spinor bloch_spinor(const Vec3& m) {
    Spinor s;
    if (m.z >= 0.0) {
        const double nrm = std::sqrt(2.0 * (1.0 + m.z));
        s = {cplx{(1.0 + m.z) / nrm, 0.0}, cplx{m.x, m.y} / nrm};
    } else {
        const double nrm = std::sqrt(2.0 * (1.0 - m.z));
        s = {cplx{m.x, -m.y} / nrm, cplx{(1.0 - m.z) / nrm, 0.0}};
    }
    return fix_gauge(s);
}

Eigen2 eig2(const Herm2& h) {
    const double r = h.d.norm();
    if (r == 0.0) return {h.c, h.c, kSpinUp, kSpinDown};
    const Vec3 n = (1.0 / r) * h.d;
    // ground state points along -n on the Bloch sphere
    return {h.c - r, h.c + r, bloch_spinor((-1.0) * n), bloch_spinor(n)};
}

Unitary2 expm_herm2(const Herm2& h, double dt) {
    const cplx global = h.c == 0.0 ? cplx{1.0, 0.0} : std::exp(cplx{0.0, -h.c * dt});
    const double r = h.d.norm();
    if (r == 0.0) return Unitary2{Mat2{global, cplx{}, cplx{}, global}};
    const double co = std::cos(r * dt);
    const double si = std::sin(r * dt) / r;
    // cos(r dt) I - i sin(r dt) d.sigma / r
    const Vec3& d = h.d;
    return Unitary2{Mat2{global * cplx{co, -si * d.z}, global * (-kI * si * cplx{d.x, -d.y}),
                         global * (-kI * si * cplx{d.x, d.y}), global * cplx{co, si * d.z}}};
}

Unitary2 su2_rotation(const Vec3& axis, double alpha) {
    const double n = axis.norm();
    if (!(std::abs(n - 1.0) <= 1e-9)) {
        std::ostringstream msg;
        msg << "su2_rotation: axis must be a unit vector, |axis| = " << n;
        throw ValidationError(msg.str());
    }
    const double co = std::cos(alpha);
    const double si = std::sin(alpha);
    return Unitary2{Mat2{cplx{co, si * axis.z}, kI * si * cplx{axis.x, -axis.y},
                         kI * si * cplx{axis.x, axis.y}, cplx{co, -si * axis.z}}};
}

cplx inner(const Spinor& a, const Spinor& b) {
    return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

double fidelity(const Spinor& a, const Spinor& b) {
    return std::clamp(std::norm(inner(a, b)), 0.0, 1.0);
}

}  // namespace quench
