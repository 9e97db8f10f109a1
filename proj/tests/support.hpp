#pragma once

// Independent oracles and random generators shared by the unit and
// acceptance tests.  Nothing here calls the library's own arithmetic.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qcurve/curve.hpp"
#include "qcurve/quaternion.hpp"

namespace oracle {

constexpr double pi = std::numbers::pi;

using Vec = std::array<double, 4>;

inline Vec vec(const qcurve::Quaternion& q) { return {q.x0, q.x1, q.x2, q.x3}; }
inline qcurve::Quaternion quat(const Vec& v) { return {v[0], v[1], v[2], v[3]}; }

// Basis products e_a e_b = sign * e_index, read off i^2 = j^2 = k^2 = ijk = -1.
struct BasisProduct {
    int sign;
    int index;
};

inline BasisProduct basis_product(int a, int b) {
    static constexpr BasisProduct table[4][4] = {
        //    1         i         j         k
        {{1, 0}, {1, 1}, {1, 2}, {1, 3}},     // 1
        {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},   // i:  i i = -1, i j = k, i k = -j
        {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},   // j:  j i = -k, j j = -1, j k = i
        {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},   // k:  k i = j, k j = -i, k k = -1
    };
    return table[a][b];
}

// Hamilton product by bilinear expansion over the basis table.
inline Vec product(const Vec& p, const Vec& q) {
    Vec r{0, 0, 0, 0};
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const auto e = basis_product(a, b);
            r[e.index] += e.sign * p[a] * q[b];
        }
    }
    return r;
}

inline qcurve::Quaternion product(const qcurve::Quaternion& p, const qcurve::Quaternion& q) {
    return quat(product(vec(p), vec(q)));
}

inline double dot(const Vec& a, const Vec& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double length(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double distance(const qcurve::Quaternion& p, const qcurve::Quaternion& q) {
    const Vec a = vec(p), b = vec(q);
    Vec d{a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
    return length(d);
}

// Planar curve z(t) = x(t) + i y(t) with its analytic derivatives; evolute
// z + i z' |z'|^2 / (x'y'' - y'x'') (classical complex-plane formula).
inline std::complex<double> planar_evolute(std::complex<double> z, std::complex<double> dz,
                                           std::complex<double> ddz) {
    const double cross = dz.real() * ddz.imag() - dz.imag() * ddz.real();
    return z + std::complex<double>(0.0, 1.0) * dz * std::norm(dz) / cross;
}

}  // namespace oracle

namespace gen {

// Deterministic random data for property tests.
class Random {
public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

    // Components of mixed magnitude so relative tolerances are exercised.
    qcurve::Quaternion quaternion() {
        const double scale = std::pow(10.0, uniform(-3.0, 3.0));
        return {scale * normal(), scale * normal(), scale * normal(), scale * normal()};
    }

    qcurve::Quaternion unit_imaginary() {
        for (;;) {
            qcurve::Quaternion w{0.0, normal(), normal(), normal()};
            const double n = std::sqrt(w.x1 * w.x1 + w.x2 * w.x2 + w.x3 * w.x3);
            if (n > 1e-3) return w / n;
        }
    }

    qcurve::Quaternion unit() {
        for (;;) {
            qcurve::Quaternion w{normal(), normal(), normal(), normal()};
            const double n = oracle::length(oracle::vec(w));
            if (n > 1e-3) return w / n;
        }
    }

    std::complex<double> complex() { return {normal(), normal()}; }

    double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

private:
    std::mt19937_64 rng_;
};

}  // namespace gen

namespace gen {

// Samples an analytic curve f(t) on a grid.
template <typename F>
qcurve::CurveSamples sample(const std::vector<double>& grid, F&& f) {
    qcurve::CurveSamples c;
    c.t = grid;
    for (double t : grid) c.q.push_back(f(t));
    return c;
}

}  // namespace gen
