#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qcurve/curve.hpp"
#include "qcurve/quaternion.hpp"

namespace qcurve {

/// Cartesian curvature kappa = k1 i + k2 j + k3 k per node, with q'' = kappa q'
/// in arc-length gauge.
struct CurvatureProfile {
    std::vector<double> t;
    std::vector<double> k1, k2, k3;
    std::vector<double> kappa_mag;
    /// |q'' - kappa q'| / max(1, |q''|) measured after arc-length reparametrization.
    std::vector<double> residual;

    std::size_t size() const { return t.size(); }
    Quaternion kappa(std::size_t i) const { return {0.0, k1[i], k2[i], k3[i]}; }
    void push_back(double t_i, const Quaternion& kappa_i, double residual_i = 0.0);
};

/// Complex curvature c with q'' = q' c j in arc-length gauge.
struct SymplecticCurvatureProfile {
    std::vector<double> t;
    std::vector<Complex> c;
    /// |q'' - q' c j| / max(1, |q''|) in arc-length gauge.  Large values mean the
    /// normal acceleration leaves the plane q' span{j, k}.
    std::vector<double> residual;

    std::size_t size() const { return t.size(); }
};

struct NormalFrame {
    Quaternion n1, n2, n3;  ///< e_i q'/|q'|
};

/// N_i = e_i q'/|q'| from a tangent vector.  Throws DomainError for q' = 0.
NormalFrame normal_frame(const Quaternion& velocity);
/// Normal frame at one node of a sampled curve; IrregularCurve if |q'| vanishes there.
NormalFrame normal_frame(const CurveSamples& c, std::size_t node);

/// kappa_i = <q'', N_i>/|q'|^2 (any regular parametrization).
Quaternion cartesian_curvature(const Quaternion& velocity, const Quaternion& acceleration);
/// c = (<q'', q'j/|q'|> + i <q'', q'k/|q'|>) / |q'|^2 (any regular parametrization).
Complex symplectic_curvature(const Quaternion& velocity, const Quaternion& acceleration);

struct FrenetOptions {
    bool compute_residual = true;
    std::optional<double> regularity_threshold;
};

CurvatureProfile curvature_cartesian(const CurveSamples& c, const FrenetOptions& opts = {});
SymplecticCurvatureProfile curvature_symplectic(const CurveSamples& c, const FrenetOptions& opts = {});

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;

/// 4x4 matrix of v -> kappa v, built column by column from the Hamilton product.
Mat4 frenet_matrix(double k1, double k2, double k3);
Vec4 frenet_matrix_apply(double k1, double k2, double k3, const Vec4& v);

using Mat2c = std::array<std::array<Complex, 2>, 2>;
struct ComplexPair {
    Complex z0, z1;
};

/// 2x2 complex matrix of (z0, z1) -> symplectic parts of (z0 + z1 j) c j,
/// generated from the Hamilton product.
Mat2c symplectic_matrix(Complex c);
ComplexPair symplectic_matrix_apply(Complex c, const ComplexPair& z);

}  // namespace qcurve
