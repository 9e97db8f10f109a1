#include "qcurve/quaternion.hpp"

#include <numbers>
#include <ostream>

#include "qcurve/errors.hpp"

namespace qcurve {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

double vector_norm(const Quaternion& q) {
    return std::sqrt(q.x1 * q.x1 + q.x2 * q.x2 + q.x3 * q.x3);
}

// Fold an angle of the plane span{1, omega} into [0, pi], flipping omega
// when the angle lands in (pi, 2 pi).
PolarForm fold_polar(double rho, double angle, const Quaternion& omega, bool degenerate) {
    angle = wrap_two_pi(angle);
    if (angle <= kPi) return {rho, angle, omega, degenerate};
    return {rho, 2.0 * kPi - angle, -omega, degenerate};
}

// Phase of a component that has just been produced by a branch rule.
// A vanishing component carries phase 0.
void apply_phase_convention(SymplecticPolarForm& s) {
    if (s.vartheta == kHalfPi) s.phi = 0.0;
    if (s.vartheta == 0.0) s.psi = 0.0;
}

}  // namespace

Quaternion inverse(const Quaternion& q) {
    const double n2 = norm2(q);
    if (n2 == 0.0) throw DomainError("non-invertible: zero quaternion has no inverse");
    return conj(q) / n2;
}

bool is_orthogonal(const Quaternion& p, const Quaternion& q, double tol) {
    return std::abs(scalar_product(p, q)) <= tol * norm(p) * norm(q);
}

bool is_parallel(const Quaternion& p, const Quaternion& q, double tol) {
    const Quaternion im = mul(p, conj(q)).imag();
    return norm(im) <= tol * norm(p) * norm(q);
}

bool approx_equal(const Quaternion& p, const Quaternion& q, Tolerance tol) {
    const double scale = std::max(norm(p), norm(q));
    return norm(p - q) <= tol.abs + tol.rel * scale;
}

double wrap_two_pi(double angle) {
    constexpr double two_pi = 2.0 * kPi;
    double a = std::fmod(angle, two_pi);
    if (a < 0.0) a += two_pi;
    // fmod of a tiny negative number plus 2 pi rounds up to 2 pi
    if (a >= two_pi) a = 0.0;
    return a;
}

PolarForm to_polar(const Quaternion& q) {
    const double rho = norm(q);
    if (rho == 0.0) throw DomainError("polar form undefined for the zero quaternion");
    const double v = vector_norm(q);
    if (v == 0.0) {
        return {rho, q.x0 > 0.0 ? 0.0 : kPi, Quaternion::i(), true};
    }
    return {rho, std::atan2(v, q.x0), q.imag() / v, false};
}

Quaternion from_polar(const PolarForm& p) {
    return p.rho * (Quaternion(std::cos(p.theta)) + std::sin(p.theta) * p.omega);
}

PolarForm polar_unit_power(const Quaternion& q, int n) {
    const PolarForm base = to_polar(q);
    if (n == 0) return base;
    // omega commutes with q, so omega^n q is a rotation by n pi/2 in span{1, omega}.
    const int quarter_turns = ((n % 4) + 4) % 4;
    return fold_polar(base.rho, base.theta + quarter_turns * kHalfPi, base.omega, base.degenerate);
}

SymplecticPolarForm to_symplectic_polar(const Quaternion& q) {
    const double rho = norm(q);
    if (rho == 0.0) throw DomainError("symplectic polar form undefined for the zero quaternion");
    const SymplecticForm s = to_symplectic(q);
    const double a0 = std::abs(s.z0);
    const double a1 = std::abs(s.z1);
    SymplecticPolarForm out;
    out.rho = rho;
    out.vartheta = std::atan2(a1, a0);
    out.phi = a0 == 0.0 ? 0.0 : wrap_two_pi(std::arg(s.z0));
    out.psi = a1 == 0.0 ? 0.0 : wrap_two_pi(std::arg(s.z1));
    return out;
}

Quaternion from_symplectic_polar(const SymplecticPolarForm& s) {
    const Complex z0 = s.rho * std::cos(s.vartheta) * std::polar(1.0, s.phi);
    const Complex z1 = s.rho * std::sin(s.vartheta) * std::polar(1.0, s.psi);
    return from_symplectic(z0, z1);
}

SymplecticPolarForm symplectic_unit_power(const Quaternion& q, int n) {
    const SymplecticPolarForm base = to_symplectic_polar(q);
    // (z0 + z1 j) j = -z1 + z0 j, so each power of j swaps the pair and
    // negates the new first slot.
    SymplecticPolarForm out = base;
    switch (((n % 4) + 4) % 4) {
        case 0:
            return base;
        case 1:
            out.vartheta = kHalfPi - base.vartheta;
            out.phi = wrap_two_pi(base.psi - kPi);
            out.psi = base.phi;
            break;
        case 2:
            out.phi = wrap_two_pi(base.phi - kPi);
            out.psi = wrap_two_pi(base.psi - kPi);
            break;
        case 3:
            out.vartheta = kHalfPi - base.vartheta;
            out.phi = base.psi;
            out.psi = wrap_two_pi(base.phi - kPi);
            break;
    }
    apply_phase_convention(out);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.x0 << ", " << q.x1 << ", " << q.x2 << ", " << q.x3 << ')';
}

}  // namespace qcurve
