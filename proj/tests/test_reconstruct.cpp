#include <cmath>
#include <vector>

#include "doctest.h"
#include "qcurve/errors.hpp"
#include "qcurve/evolve.hpp"
#include "qcurve/frenet.hpp"
#include "qcurve/reconstruct.hpp"
#include "support.hpp"

using namespace qcurve;
using oracle::pi;

namespace {

template <typename F>
ReconstructionSpec spec_on(std::vector<double> grid, F&& kappa, Quaternion omega = Quaternion::i(), double phi0 = 0.0,
                           Quaternion P0 = Quaternion(0.0), Quaternion V0 = Quaternion(1.0)) {
    ReconstructionSpec s;
    s.t = std::move(grid);
    for (double t : s.t) s.kappa_mag.push_back(kappa(t));
    s.omega = omega;
    s.phi0 = phi0;
    s.P0 = P0;
    s.V0 = V0;
    return s;
}

double max_distance(const CurveSamples& a, const CurveSamples& b, std::size_t margin = 0) {
    double e = 0.0;
    for (std::size_t i = margin; i + margin < a.size(); ++i) e = std::max(e, oracle::distance(a.q[i], b.q[i]));
    return e;
}

double speed_error(const CurveSamples& c) {
    const auto d = derivatives(c);
    const std::size_t m = interior_margin(c.size());
    double e = 0.0;
    for (std::size_t i = m; i + m < c.size(); ++i) e = std::max(e, std::abs(norm(d.d1[i]) - 1.0));
    return e;
}

const auto grid_h3 = numerics::uniform_grid(0, 2 * pi, 6284);  // h ~ 1e-3

}  // namespace

TEST_CASE("spec validation") {
    auto s = spec_on(numerics::uniform_grid(0, 1, 11), [](double) { return 1.0; });
    CHECK_NOTHROW(s.validate());
    auto bad = s;
    bad.omega = Quaternion(0, 1, 1, 0);
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    bad = s;
    bad.omega = Quaternion(0.1, 1, 0, 0) / norm(Quaternion(0.1, 1, 0, 0));
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    bad = s;
    bad.V0 = Quaternion(2.0);
    CHECK_THROWS_AS(reconstruct_closed_form(bad), InvalidInput);
    bad = s;
    bad.kappa_mag[3] = -0.1;
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    bad = s;
    bad.kappa_mag.pop_back();
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("closed form: examples") {
    SUBCASE("unit |kappa| reproduces the constant-curvature circle") {
        const auto s = spec_on(grid_h3, [](double) { return 1.0; }, Quaternion::i(), pi / 2, Quaternion(1.0), Quaternion::i());
        const auto q = reconstruct_closed_form(s);
        CHECK(max_distance(q, builtin_constant_curvature(Quaternion::i(), 0.0, grid_h3)) < 1e-6);
    }
    SUBCASE("zero curvature gives a line") {
        const Quaternion P0(1, 2, 3, 4), V0 = Quaternion(0, 1, 1, 1) / std::sqrt(3.0);
        const auto q = reconstruct_closed_form(spec_on(numerics::uniform_grid(0, 3, 31), [](double) { return 0.0; },
                                                       Quaternion::j(), 0.7, P0, V0));
        for (std::size_t i = 0; i < q.size(); ++i) CHECK(oracle::distance(q.q[i], P0 + q.t[i] * V0) < 1e-13);
    }
    SUBCASE("clothoid agrees with the ODE path") {
        const auto s = spec_on(numerics::uniform_grid(0, 4, 4001), [](double t) { return t; }, Quaternion::k(), 0.3);
        const auto closed = reconstruct_closed_form(s);
        const auto ode = reconstruct_ode(profile_from_spec(s), s.P0, s.V0);
        CHECK(max_distance(closed, ode) < 1e-5);
    }
}

TEST_CASE("closed form: initial conditions for any unit V0") {
    gen::Random rng(71);
    for (int n = 0; n < 20; ++n) {
        const Quaternion P0 = rng.quaternion(), V0 = rng.unit(), w = rng.unit_imaginary();
        const auto s = spec_on(numerics::uniform_grid(0, 2, 801), [](double t) { return 1.0 + 0.5 * std::sin(3 * t); }, w,
                               rng.uniform(-pi, pi), P0, V0);
        const auto q = reconstruct_closed_form(s);
        CHECK(q.q[0] == P0);
        const auto d = derivatives(q, BoundaryStencil::FourthOrder);
        CHECK(oracle::distance(d.d1[0], V0) < 1e-8);
        CHECK(speed_error(q) < 1e-5);
    }
}

TEST_CASE("closed form stays in its plane") {
    gen::Random rng(72);
    for (int n = 0; n < 20; ++n) {
        const Quaternion P0 = rng.quaternion(), V0 = rng.unit(), w = rng.unit_imaginary();
        const double phi0 = rng.uniform(-pi, pi);
        const auto s = spec_on(numerics::uniform_grid(0, 5, 1001), [](double t) { return 1.0 + 0.5 * std::sin(3 * t); }, w, phi0, P0, V0);
        const auto q = reconstruct_closed_form(s);
        // the plane through P0 spanned by R and w R, R = conj(cos phi0 + w sin phi0) V0
        const Quaternion R = oracle::product(conj(Quaternion(std::cos(phi0)) + std::sin(phi0) * w), V0);
        double worst = 0.0;
        for (const auto& p : q.q) {
            const Quaternion u = oracle::product(p - P0, conj(R));
            const Quaternion off = u - Quaternion(u.x0) - scalar_product(u, w) * w;
            worst = std::max(worst, norm(off));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("ODE: examples") {
    SUBCASE("constant kappa = i at h = 1e-3") {
        CurvatureProfile k;
        for (double t : grid_h3) k.push_back(t, Quaternion::i());
        const auto q = reconstruct_ode(k, Quaternion(1.0), Quaternion::i());
        CHECK(max_distance(q, builtin_constant_curvature(Quaternion::i(), 0.0, grid_h3)) < 1e-8);
    }
    SUBCASE("zero kappa gives a line") {
        CurvatureProfile k;
        for (double t : numerics::uniform_grid(-1, 1, 21)) k.push_back(t, Quaternion{});
        const Quaternion V0 = Quaternion(0, 0, 0.6, 0.8);
        const auto q = reconstruct_ode(k, Quaternion(2.0), V0);
        for (std::size_t i = 0; i < q.size(); ++i) CHECK(oracle::distance(q.q[i], Quaternion(2.0) + (q.t[i] + 1) * V0) < 1e-14);
    }
    SUBCASE("errors") {
        CurvatureProfile k;
        for (double t : numerics::uniform_grid(0, 1, 11)) k.push_back(t, Quaternion::i());
        CHECK_THROWS_AS(reconstruct_ode(k, Quaternion{}, Quaternion(1.5)), InvalidInput);
        CHECK_THROWS_AS(reconstruct_ode(k, Quaternion{}, Quaternion(1.0), 11), InvalidInput);
        CurvatureProfile broken = k;
        broken.k2.pop_back();
        CHECK_THROWS_AS(reconstruct_ode(broken, Quaternion{}, Quaternion(1.0)), InvalidInput);
    }
}

TEST_CASE("ODE with a varying curvature direction") {
    const auto grid = numerics::uniform_grid(0, 6, 3001);
    CurvatureProfile K;
    for (double t : grid) K.push_back(t, Quaternion(0, std::cos(t), std::sin(t), 0.5 + 0.2 * t));
    const Quaternion V0 = Quaternion(1, 0, 0, 1) / std::sqrt(2.0);
    const std::size_t mid = grid.size() / 2;
    const auto q = reconstruct_ode(K, Quaternion(0, 1), V0, mid);
    CHECK(q.q[mid] == Quaternion(0, 1));
    CHECK(speed_error(q) < 1e-6);

    // extraction inverts the reconstruction
    const auto back = curvature_cartesian(q);
    const std::size_t m = interior_margin(grid.size());
    double e = 0.0;
    for (std::size_t i = m; i + m < grid.size(); ++i) e = std::max(e, norm(back.kappa(i) - K.kappa(i)));
    CHECK(e < 1e-3);
}

TEST_CASE("reconstruction of an extracted profile recovers the curve") {
    const auto s = spec_on(numerics::uniform_grid(0, 2 * pi, 2001), [](double t) { return 1.5 + std::sin(t); },
                           Quaternion(0, 0, 1, 0), 0.4, Quaternion(0, 0, 0, 1), Quaternion(0, 1, 0, 0));
    const auto curve = reconstruct_closed_form(s);
    const auto K = curvature_cartesian(curve);
    const std::size_t mid = curve.size() / 2;
    const auto T = tangent(curve);
    const auto again = reconstruct_ode(K, curve.q[mid], T[mid], mid);
    CHECK(max_distance(again, curve, interior_margin(curve.size())) < 1e-4);
}

TEST_CASE("RK4 converges at fourth order") {
    auto kappa = [](double t) { return 1.0 + std::sin(t); };
    const auto fine = reconstruct_closed_form(spec_on(numerics::uniform_grid(0, 2 * pi, 64 * 16 + 1), kappa));
    auto run = [&](std::size_t n) {
        const auto s = spec_on(numerics::uniform_grid(0, 2 * pi, n), kappa);
        return reconstruct_ode(profile_from_spec(s), s.P0, s.V0);
    };
    const auto a = run(65), b = run(129);
    double ea = 0.0, eb = 0.0;
    for (std::size_t i = 0; i < 65; ++i) {
        ea = std::max(ea, oracle::distance(a.q[i], fine.q[16 * i]));
        eb = std::max(eb, oracle::distance(b.q[2 * i], fine.q[16 * i]));
    }
    CHECK(ea / eb >= 14.0);
}

TEST_CASE("uniqueness check") {
    const auto constant = spec_on(grid_h3, [](double) { return 1.3; }, Quaternion::k(), 0.2);
    CHECK(uniqueness_check(constant, Perturbation::AlternateIntegrator).max_deviation < 1e-6);
    const auto zero = spec_on(grid_h3, [](double) { return 0.0; });
    CHECK(uniqueness_check(zero, Perturbation::AlternateIntegrator).max_deviation < 1e-12);
    const auto varying = spec_on(grid_h3, [](double t) { return 1.0 + std::sin(t); });
    const auto r = uniqueness_check(varying, Perturbation::AlternateIntegrator);
    CHECK(r.max_deviation < 1e-5);
    CHECK(r.nodes_compared == grid_h3.size());
    CHECK(r.perturbation == Perturbation::AlternateIntegrator);
    CHECK(uniqueness_check(varying, Perturbation::HalvedStep).max_deviation < 1e-5);
}

TEST_CASE("symplectic reconstruction") {
    const auto grid = numerics::uniform_grid(0, 2 * pi, 2001);
    const std::size_t m = interior_margin(grid.size());
    SUBCASE("unit |c| recovers the phase phi0 + pi/2") {
        const std::vector<double> mag(grid.size(), 1.0);
        const auto q = reconstruct_symplectic(grid, mag, 0.0, 0.0, 0.0);
        CHECK(speed_error(q) < 1e-5);
        const auto p = curvature_symplectic(q);
        for (std::size_t i = m; i + m < p.size(); ++i) CHECK(std::abs(p.c[i] - Complex(0, 1)) < 1e-4);
    }
    SUBCASE("varying |c| and phase") {
        std::vector<double> mag;
        for (double t : grid) mag.push_back(1.0 / (1.0 + t));
        const auto q = reconstruct_symplectic(grid, mag, 0.9, Complex(1, -1), Complex(0.5, 2));
        CHECK(q.q[0] == from_symplectic(Complex(1, -1), Complex(0.5, 2)));
        const auto p = curvature_symplectic(q);
        for (std::size_t i = m; i + m < p.size(); ++i) CHECK(std::abs(p.c[i] - std::polar(mag[i], 0.9 + pi / 2)) < 1e-4);
    }
    SUBCASE("zero |c|: z0 a line and z1 parallel to it") {
        const std::vector<double> mag(grid.size(), 0.0);
        const Complex P0(1, 1), Q0(-2, 0);
        const double phi0 = 0.6;
        const auto q = reconstruct_symplectic(grid, mag, phi0, P0, Q0);
        for (std::size_t i = 0; i < q.size(); ++i) {
            const auto s = to_symplectic(q.q[i]);
            CHECK(std::abs(s.z0 - (P0 + q.t[i] / std::sqrt(2.0))) < 1e-12);
            CHECK(std::abs((s.z1 - Q0) - std::polar(1.0, phi0) * (s.z0 - P0)) < 1e-12);
        }
    }
    SUBCASE("constant |c| matches the builtin up to a rigid motion") {
        const double phi0 = 0.35, mag = 1.4;
        const auto q = reconstruct_symplectic(grid, std::vector<double>(grid.size(), mag), phi0, 0.0, 0.0);
        const auto b = builtin_symplectic(std::polar(mag, phi0 + pi / 2), 0.0, grid);
        // q'' = q' c j is invariant under q -> a q + p for unit a
        const std::size_t mid = grid.size() / 2;
        const auto dq = derivatives(q), db = derivatives(b);
        const Quaternion a = oracle::product(dq.d1[mid], conj(db.d1[mid])) / norm2(db.d1[mid]);
        const Quaternion p = q.q[mid] - oracle::product(a, b.q[mid]);
        double e = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) e = std::max(e, oracle::distance(q.q[i], oracle::product(a, b.q[i]) + p));
        CHECK(e < 1e-5);
    }
    SUBCASE("errors") {
        std::vector<double> mag(grid.size(), 1.0);
        mag[5] = -1.0;
        CHECK_THROWS_AS(reconstruct_symplectic(grid, mag, 0.0, 0.0, 0.0), InvalidInput);
        mag.pop_back();
        CHECK_THROWS_AS(reconstruct_symplectic(grid, mag, 0.0, 0.0, 0.0), InvalidInput);
    }
}
