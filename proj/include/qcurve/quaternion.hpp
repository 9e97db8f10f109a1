#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <iosfwd>

namespace qcurve {

using Complex = std::complex<double>;

/// q = x0 + x1 i + x2 j + x3 k with i^2 = j^2 = k^2 = ijk = -1.
struct Quaternion {
    double x0 = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double a, double b = 0.0, double c = 0.0, double d = 0.0)
        : x0(a), x1(b), x2(c), x3(d) {}

    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    /// Basis unit e_0 = 1, e_1 = i, e_2 = j, e_3 = k.
    static constexpr Quaternion unit(int index) {
        Quaternion q;
        q[index] = 1.0;
        return q;
    }

    constexpr double& operator[](int index) {
        switch (index) {
            case 0: return x0;
            case 1: return x1;
            case 2: return x2;
            default: return x3;
        }
    }
    constexpr double operator[](int index) const {
        switch (index) {
            case 0: return x0;
            case 1: return x1;
            case 2: return x2;
            default: return x3;
        }
    }

    constexpr double real() const { return x0; }
    constexpr Quaternion imag() const { return {0.0, x1, x2, x3}; }
    constexpr std::array<double, 4> to_array() const { return {x0, x1, x2, x3}; }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        x0 += o.x0; x1 += o.x1; x2 += o.x2; x3 += o.x3;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        x0 -= o.x0; x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        x0 *= s; x1 *= s; x2 *= s; x3 *= s;
        return *this;
    }
    constexpr Quaternion& operator/=(double s) {
        x0 /= s; x1 /= s; x2 /= s; x3 /= s;
        return *this;
    }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.x0, -a.x1, -a.x2, -a.x3}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }

/// Hamilton product.
constexpr Quaternion mul(const Quaternion& p, const Quaternion& q) {
    return {
        p.x0 * q.x0 - p.x1 * q.x1 - p.x2 * q.x2 - p.x3 * q.x3,
        p.x0 * q.x1 + p.x1 * q.x0 + p.x2 * q.x3 - p.x3 * q.x2,
        p.x0 * q.x2 - p.x1 * q.x3 + p.x2 * q.x0 + p.x3 * q.x1,
        p.x0 * q.x3 + p.x1 * q.x2 - p.x2 * q.x1 + p.x3 * q.x0,
    };
}
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return mul(p, q); }

constexpr Quaternion conj(const Quaternion& q) { return {q.x0, -q.x1, -q.x2, -q.x3}; }
constexpr double norm2(const Quaternion& q) {
    return q.x0 * q.x0 + q.x1 * q.x1 + q.x2 * q.x2 + q.x3 * q.x3;
}
inline double norm(const Quaternion& q) { return std::sqrt(norm2(q)); }

/// conj(q)/|q|^2; throws DomainError for q = 0.
Quaternion inverse(const Quaternion& q);

/// <p, q> = Re[p conj(q)], the Euclidean dot product on R^4.
constexpr double scalar_product(const Quaternion& p, const Quaternion& q) {
    return p.x0 * q.x0 + p.x1 * q.x1 + p.x2 * q.x2 + p.x3 * q.x3;
}

/// |<p,q>| <= tol |p||q|.  Zero inputs are orthogonal to everything.
bool is_orthogonal(const Quaternion& p, const Quaternion& q, double tol = 1e-9);
/// |Im[p conj(q)]| <= tol |p||q|, i.e. <p,q> = p conj(q).  Zero inputs are parallel to everything.
bool is_parallel(const Quaternion& p, const Quaternion& q, double tol = 1e-9);

/// Absolute plus relative tolerance used for all floating comparisons.
struct Tolerance {
    double abs = 1e-9;
    double rel = 1e-9;
};
bool approx_equal(const Quaternion& p, const Quaternion& q, Tolerance tol = {});

// ---------------------------------------------------------------------------
// Polar form  q = rho (cos theta + omega sin theta)

struct PolarForm {
    double rho = 0.0;
    double theta = 0.0;          ///< in [0, pi]
    Quaternion omega = Quaternion::i();  ///< unit, pure imaginary
    bool degenerate = false;     ///< q was real, omega chosen by convention (= i)
};

PolarForm to_polar(const Quaternion& q);
Quaternion from_polar(const PolarForm& p);

/// Normalized polar data of omega^n q, omega being q's own polar unit.
/// The angle theta + n pi/2 is folded back into [0, pi] by flipping omega.
PolarForm polar_unit_power(const Quaternion& q, int n);

// ---------------------------------------------------------------------------
// Symplectic forms  q = z0 + z1 j,  z0 = x0 + x1 i,  z1 = x2 + x3 i

struct SymplecticForm {
    Complex z0;
    Complex z1;
};

struct SymplecticPolarForm {
    double rho = 0.0;
    double vartheta = 0.0;  ///< in [0, pi/2]
    double phi = 0.0;       ///< phase of z0 in [0, 2 pi); 0 when z0 = 0
    double psi = 0.0;       ///< phase of z1 in [0, 2 pi); 0 when z1 = 0
};

constexpr SymplecticForm to_symplectic(const Quaternion& q) {
    return {Complex(q.x0, q.x1), Complex(q.x2, q.x3)};
}
constexpr Quaternion from_symplectic(const SymplecticForm& s) {
    return {s.z0.real(), s.z0.imag(), s.z1.real(), s.z1.imag()};
}
constexpr Quaternion from_symplectic(Complex z0, Complex z1) { return from_symplectic({z0, z1}); }

SymplecticPolarForm to_symplectic_polar(const Quaternion& q);
Quaternion from_symplectic_polar(const SymplecticPolarForm& s);

/// Normalized symplectic-polar data of q j^n, following the mod-4 branch table.
SymplecticPolarForm symplectic_unit_power(const Quaternion& q, int n);

/// Wraps an angle into [0, 2 pi).
double wrap_two_pi(double angle);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qcurve
