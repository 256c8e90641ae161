#pragma once

// Exact 2x2 linear algebra for single-qubit generators and propagators.
//
// Generators are kept in Bloch form H = c*I + d.sigma so that exponentials
// and eigenpairs have closed forms; everything here is a pure function.

#include <array>
#include <complex>

namespace quench {

using cplx = std::complex<double>;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    [[nodiscard]] double norm() const;
    friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Normalized two-component state (up, down).
struct Spinor {
    cplx up{1.0, 0.0};
    cplx down{0.0, 0.0};

    [[nodiscard]] double norm_sq() const { return std::norm(up) + std::norm(down); }
    friend bool operator==(const Spinor&, const Spinor&) = default;
};

inline constexpr Spinor kSpinUp{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
inline constexpr Spinor kSpinDown{cplx{0.0, 0.0}, cplx{1.0, 0.0}};

/// Row-major dense 2x2 complex matrix.
using Mat2 = std::array<cplx, 4>;

/// Hermitian generator H = c*I + d.x X + d.y Y + d.z Z.
struct Herm2 {
    double c = 0.0;
    Vec3 d{};

    [[nodiscard]] Mat2 dense() const;
    /// Inverse of dense(); the anti-Hermitian part of `m` is discarded.
    static Herm2 from_dense(const Mat2& m);

    friend Herm2 operator*(double s, const Herm2& h) { return {s * h.c, s * h.d}; }
};

class Unitary2 {
public:
    Unitary2() = default;
    explicit Unitary2(const Mat2& entries) : m_(entries) {}

    static Unitary2 identity() { return Unitary2{}; }

    [[nodiscard]] const Mat2& entries() const { return m_; }
    [[nodiscard]] cplx operator()(int row, int col) const { return m_[2 * row + col]; }

    [[nodiscard]] Unitary2 adjoint() const;
    [[nodiscard]] cplx det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
    /// max |(U^dagger U - I)_ij|
    [[nodiscard]] double unitarity_defect() const;

    friend Unitary2 operator*(const Unitary2& a, const Unitary2& b);
    friend Spinor operator*(const Unitary2& u, const Spinor& s);

private:
    Mat2 m_{cplx{1.0, 0.0}, cplx{}, cplx{}, cplx{1.0, 0.0}};
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Unitary2& a, const Unitary2& b);

struct Eigen2 {
    double e_minus = 0.0;
    double e_plus = 0.0;
    Spinor ground;
    Spinor excited;
};

/// Eigenpairs of H. Each eigenvector has its largest-magnitude amplitude made
/// real and positive (ties go to the up component). For d = 0 the canonical
/// basis is returned with both energies equal to c.
Eigen2 eig2(const Herm2& h);

/// exp(-i H dt) in closed form.
Unitary2 expm_herm2(const Herm2& h, double dt);

/// cos(alpha) I + i sin(alpha) axis.sigma, i.e. exp(+i alpha axis.sigma).
/// Throws ValidationError unless |axis| = 1 within 1e-9.
Unitary2 su2_rotation(const Vec3& axis, double alpha);

/// <a|b>
cplx inner(const Spinor& a, const Spinor& b);

/// |<a|b>|^2 clamped to [0, 1].
double fidelity(const Spinor& a, const Spinor& b);

/// Spinor whose Bloch vector is the unit vector m, in the eig2 gauge.
Spinor bloch_spinor(const Vec3& m);

}  // namespace quench
