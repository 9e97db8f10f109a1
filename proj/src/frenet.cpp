#include "qcurve/frenet.hpp"

#include <algorithm>
#include <cmath>

#include "qcurve/errors.hpp"

namespace qcurve {

namespace {

// Evaluates a per-node defect on the arc-length reparametrized curve and
// carries it back to the source nodes through s_i = L(t_i).
template <typename Defect>
std::vector<double> arc_length_residual(const CurveSamples& c, const CurveDerivatives& d,
                                        Defect&& defect) {
    const Reparametrization r = arc_length_parametrization(c);
    const CurveDerivatives dr = derivatives(r.curve);
    std::vector<double> on_s(r.curve.size());
    for (std::size_t k = 0; k < on_s.size(); ++k) {
        const Quaternion& v = dr.d1[k];
        const Quaternion& a = dr.d2[k];
        on_s[k] = norm(defect(v, a)) / std::max(1.0, norm(a));
    }
    const ArcLengthMap L(c, d);
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = numerics::linear_interpolate(r.curve.t, on_s, L.at_nodes()[i]);
    }
    return out;
}

}  // namespace

void CurvatureProfile::push_back(double t_i, const Quaternion& kappa_i, double residual_i) {
    t.push_back(t_i);
    k1.push_back(kappa_i.x1);
    k2.push_back(kappa_i.x2);
    k3.push_back(kappa_i.x3);
    kappa_mag.push_back(norm(kappa_i.imag()));
    residual.push_back(residual_i);
}

NormalFrame normal_frame(const Quaternion& velocity) {
    const double speed = norm(velocity);
    if (speed == 0.0) throw DomainError("normal frame undefined where q' = 0");
    const Quaternion T = velocity / speed;
    return {Quaternion::i() * T, Quaternion::j() * T, Quaternion::k() * T};
}

NormalFrame normal_frame(const CurveSamples& c, std::size_t node) {
    if (node >= c.size()) throw InvalidInput("normal_frame: node index out of range");
    const auto d = derivatives(c);
    const double limit = default_regularity_threshold(d);
    if (!(norm(d.d1[node]) > limit)) {
        throw IrregularCurve(c.t[node], "irregular curve at node " + std::to_string(node));
    }
    return normal_frame(d.d1[node]);
}

Quaternion cartesian_curvature(const Quaternion& velocity, const Quaternion& acceleration) {
    const NormalFrame n = normal_frame(velocity);
    const double s2 = norm2(velocity);
    return {0.0, scalar_product(acceleration, n.n1) / s2, scalar_product(acceleration, n.n2) / s2,
            scalar_product(acceleration, n.n3) / s2};
}

Complex symplectic_curvature(const Quaternion& velocity, const Quaternion& acceleration) {
    const double speed = norm(velocity);
    if (speed == 0.0) throw DomainError("symplectic curvature undefined where q' = 0");
    const Quaternion nj = velocity * Quaternion::j() / speed;
    const Quaternion nk = velocity * Quaternion::k() / speed;
    const double s2 = speed * speed;
    return {scalar_product(acceleration, nj) / s2, scalar_product(acceleration, nk) / s2};
}

CurvatureProfile curvature_cartesian(const CurveSamples& c, const FrenetOptions& opts) {
    const auto d = derivatives(c);
    require_regular(d, opts.regularity_threshold);
    std::vector<double> residual(c.size(), 0.0);
    if (opts.compute_residual) {
        residual = arc_length_residual(c, d, [](const Quaternion& v, const Quaternion& a) {
            return a - cartesian_curvature(v, a) * v;
        });
    }
    CurvatureProfile p;
    for (std::size_t i = 0; i < c.size(); ++i) {
        p.push_back(c.t[i], cartesian_curvature(d.d1[i], d.d2[i]), residual[i]);
    }
    return p;
}

SymplecticCurvatureProfile curvature_symplectic(const CurveSamples& c, const FrenetOptions& opts) {
    const auto d = derivatives(c);
    require_regular(d, opts.regularity_threshold);
    SymplecticCurvatureProfile p;
    p.t = c.t;
    p.c.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) p.c[i] = symplectic_curvature(d.d1[i], d.d2[i]);
    p.residual.assign(c.size(), 0.0);
    if (opts.compute_residual) {
        p.residual = arc_length_residual(c, d, [](const Quaternion& v, const Quaternion& a) {
            const Complex cc = symplectic_curvature(v, a);
            return a - v * from_symplectic(cc, 0.0) * Quaternion::j();
        });
    }
    return p;
}

Mat4 frenet_matrix(double k1, double k2, double k3) {
    const Quaternion kappa(0.0, k1, k2, k3);
    Mat4 m{};
    for (int col = 0; col < 4; ++col) {
        const Quaternion image = mul(kappa, Quaternion::unit(col));
        for (int row = 0; row < 4; ++row) m[row][col] = image[row];
    }
    return m;
}

Vec4 frenet_matrix_apply(double k1, double k2, double k3, const Vec4& v) {
    const Mat4 m = frenet_matrix(k1, k2, k3);
    Vec4 out{};
    for (int row = 0; row < 4; ++row) {
        double acc = 0.0;
        for (int col = 0; col < 4; ++col) acc += m[row][col] * v[col];
        out[row] = acc;
    }
    return out;
}

Mat2c symplectic_matrix(Complex c) {
    const Quaternion cj = from_symplectic(c, 0.0) * Quaternion::j();
    const SymplecticForm col0 = to_symplectic(Quaternion(1.0) * cj);
    const SymplecticForm col1 = to_symplectic(Quaternion::j() * cj);
    return {{{col0.z0, col1.z0}, {col0.z1, col1.z1}}};
}

ComplexPair symplectic_matrix_apply(Complex c, const ComplexPair& z) {
    const Mat2c m = symplectic_matrix(c);
    return {m[0][0] * z.z0 + m[0][1] * z.z1, m[1][0] * z.z0 + m[1][1] * z.z1};
}

}  // namespace qcurve
