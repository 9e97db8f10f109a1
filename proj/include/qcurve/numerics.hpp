#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qcurve::numerics {

/// n equally spaced nodes from a to b inclusive (b is hit exactly).
std::vector<double> uniform_grid(double a, double b, std::size_t n);

/// Throws InvalidInput unless t is strictly increasing and finite.
void require_strictly_increasing(std::span<const double> t, const char* what = "grid");

/// Finite-difference weights (Fornberg) for derivatives 0..max_order at x0
/// over arbitrary distinct nodes.  Result is indexed [order][node].
std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes, int max_order);

/// Running integral F(t_i) = \int_{t_0}^{t_i} f, composite Simpson on node
/// pairs.  Odd nodes integrate the interpolating parabola over the first
/// half of their pair; a trailing single interval reuses the last three nodes.
std::vector<double> cumulative_simpson(std::span<const double> t, std::span<const double> f);

/// Running integral built interval by interval from the cubic through the
/// four surrounding nodes (one-sided at the ends).  Fourth order like
/// Simpson, but its error varies smoothly from node to node, so the result
/// can itself be differentiated numerically.  Fewer than 4 nodes falls back
/// to cumulative_simpson.
std::vector<double> cumulative_integral(std::span<const double> t, std::span<const double> f);

/// Composite Simpson over the whole grid (last entry of cumulative_simpson).
double simpson(std::span<const double> t, std::span<const double> f);

/// Quintic Hermite basis on one interval of width h, u in [0, 1].
/// Values are weights for (f0, h f0', h^2 f0'', f1, h f1', h^2 f1'').
struct HermiteWeights {
    double w[6];
};
HermiteWeights quintic_hermite_basis(double u);
/// d/du of the basis.
HermiteWeights quintic_hermite_basis_du(double u);
/// d^2/du^2 of the basis.
HermiteWeights quintic_hermite_basis_du2(double u);

/// Interpolates (value, first, second derivative) node data with a C2
/// piecewise quintic.  V needs +, -, and scalar *.
template <typename V>
class QuinticHermite {
public:
    QuinticHermite(std::span<const double> t, std::span<const V> f, std::span<const V> df,
                   std::span<const V> d2f)
        : t_(t.begin(), t.end()), f_(f.begin(), f.end()), df_(df.begin(), df.end()),
          d2f_(d2f.begin(), d2f.end()) {}

    /// Index i such that t_i <= x <= t_{i+1} (clamped to the grid).
    std::size_t interval(double x) const;

    V value(double x) const { return eval(x, 0); }
    V derivative(double x) const { return eval(x, 1); }
    V second_derivative(double x) const { return eval(x, 2); }

    const std::vector<double>& nodes() const { return t_; }
    const std::vector<V>& values() const { return f_; }

private:
    V eval(double x, int order) const;

    std::vector<double> t_;
    std::vector<V> f_, df_, d2f_;
};

/// Piecewise-linear interpolation with clamping outside the grid.
double linear_interpolate(std::span<const double> t, std::span<const double> f, double x);

/// Value at x of the cubic through the four nodes nearest the interval that
/// contains x (one-sided at the ends).  Fourth-order accurate on smooth data.
double cubic_interpolate(std::span<const double> t, std::span<const double> f, double x);

}  // namespace qcurve::numerics

#include "qcurve/detail/quintic_hermite.ipp"
