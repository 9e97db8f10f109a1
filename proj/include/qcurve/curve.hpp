#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcurve/numerics.hpp"
#include "qcurve/quaternion.hpp"

namespace qcurve {

/// A quaternionic curve q: I -> H sampled on a strictly increasing grid.
struct CurveSamples {
    std::vector<double> t;
    std::vector<Quaternion> q;
    std::string meta;  ///< provenance: builtin name and parameters, or "ingested"

    std::size_t size() const { return t.size(); }

    /// Throws InvalidInput unless len(t) = len(q) >= 5, t strictly increasing, q finite.
    void validate() const;
};

inline constexpr std::size_t kMinCurveNodes = 5;

struct CurveDerivatives {
    std::vector<double> t;
    std::vector<Quaternion> d1;
    std::vector<Quaternion> d2;
    int stencil_order = 4;
};

/// Samples of q(t) = (1/|k|)[cos(|k|t + phi0) + w sin(|k|t + phi0)], w = k/|k|.
/// kappa must be nonzero; its real part is ignored.
CurveSamples builtin_constant_curvature(const Quaternion& kappa, double phi0,
                                        std::span<const double> grid);

/// Samples of q(t) = (1/|c|)[cos(|c|t + phi0) e^{-i a/2} + sin(|c|t + phi0) e^{i a/2} j],
/// c = |c| e^{i a}.  Unit speed with constant complex curvature c.
CurveSamples builtin_symplectic(Complex c, double phi0, std::span<const double> grid);

enum class BoundaryStencil {
    SecondOrder,  ///< 3-point (q') and 4-point (q'') one-sided stencils
    FourthOrder,  ///< 5-point (q') and 6-point (q'') one-sided stencils
};

/// Fourth-order central differences inside, one-sided second-order stencils
/// on the two outermost nodes of each end.  Works on non-uniform grids.
CurveDerivatives derivatives(const CurveSamples& c);
/// Same interior stencil with a selectable boundary treatment.  Interpolants
/// use the fourth-order ends (needs at least 6 nodes, else falls back).
CurveDerivatives derivatives(const CurveSamples& c, BoundaryStencil boundary);

/// Speed |q'| per node.
std::vector<double> speeds(const CurveDerivatives& d);

/// Default regularity threshold: 1e-8 of the largest node speed.
double default_regularity_threshold(const CurveDerivatives& d);

/// min node |q'| > threshold (default threshold when none given).
bool is_regular(const CurveSamples& c, std::optional<double> threshold = std::nullopt);

/// Throws IrregularCurve naming the first node with |q'| <= threshold.
void require_regular(const CurveDerivatives& d, std::optional<double> threshold = std::nullopt);

/// Unit tangent T = q'/|q'| per node.
std::vector<Quaternion> tangent(const CurveSamples& c, std::optional<double> threshold = std::nullopt);

/// Smooth evaluation of a sampled curve between nodes: C2 quintic Hermite
/// through the node values and finite-difference derivatives.
class CurveInterpolant {
public:
    explicit CurveInterpolant(const CurveSamples& c);
    CurveInterpolant(const CurveSamples& c, const CurveDerivatives& d);

    Quaternion value(double t) const { return spline_.value(t); }
    Quaternion derivative(double t) const { return spline_.derivative(t); }
    Quaternion second_derivative(double t) const { return spline_.second_derivative(t); }

    double t_begin() const { return spline_.nodes().front(); }
    double t_end() const { return spline_.nodes().back(); }

private:
    numerics::QuinticHermite<Quaternion> spline_;
};

/// Arc length L(t) = \int_{t0}^{t} |q'|: cumulative_integral at the nodes,
/// quintic Hermite (with L' = |q'|, L'' = |q'|') in between.
class ArcLengthMap {
public:
    explicit ArcLengthMap(const CurveSamples& c);
    ArcLengthMap(const CurveSamples& c, const CurveDerivatives& d);

    /// L(t) measured from the first node.
    double operator()(double t) const { return spline_.value(t); }
    /// L at every node.
    const std::vector<double>& at_nodes() const { return spline_.values(); }
    double total() const { return spline_.values().back(); }
    /// Parameter t with L(t) = s (s clamped to [0, total]).
    double inverse(double s) const;

private:
    numerics::QuinticHermite<double> spline_;
};

/// Length of the curve between two parameter values inside the grid span.
/// Throws InvalidInput for intervals leaving the span.
double arc_length(const CurveSamples& c, double t_from, double t_to);

/// Arc-length parametrized curve plus, for every output node, the source
/// parameter it came from.
struct Reparametrization {
    CurveSamples curve;
    std::vector<double> source_t;
};

/// Same node count, uniform in arc length s in [0, L].  Inversion of s = L(t)
/// and resampling both use the quintic Hermite interpolants above.
Reparametrization arc_length_parametrization(const CurveSamples& c);
CurveSamples reparametrize_by_arc_length(const CurveSamples& c);

/// True when every node speed lies within tol of 1.
bool is_unit_speed(const CurveDerivatives& d, double tol);

}  // namespace qcurve
