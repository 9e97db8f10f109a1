#include "qcurve/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcurve/errors.hpp"

namespace qcurve::numerics {

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
    if (n < 2) throw InvalidInput("uniform_grid needs at least two nodes");
    if (!(b > a)) throw InvalidInput("uniform_grid needs b > a");
    std::vector<double> t(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) t[i] = a + h * static_cast<double>(i);
    t.back() = b;
    return t;
}

void require_strictly_increasing(std::span<const double> t, const char* what) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i])) {
            throw InvalidInput(std::string(what) + ": non-finite value at index " + std::to_string(i));
        }
        if (i > 0 && !(t[i] > t[i - 1])) {
            throw InvalidInput(std::string(what) + ": not strictly increasing at index " +
                               std::to_string(i));
        }
    }
}

std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes, int max_order) {
    const int n = static_cast<int>(nodes.size());
    std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

namespace {

// Integral over [x0, x0 + u] of the parabola through (x0,f0), (x1,f1), (x2,f2).
double parabola_integral(double x0, double x1, double x2, double f0, double f1, double f2,
                         double u) {
    const double h0 = x1 - x0;
    const double h1 = x2 - x1;
    const double b = (f1 - f0) / h0;
    const double c = ((f2 - f1) / h1 - b) / (h0 + h1);
    return f0 * u + b * u * u / 2.0 + c * (u * u * u / 3.0 - h0 * u * u / 2.0);
}

}  // namespace

std::vector<double> cumulative_simpson(std::span<const double> t, std::span<const double> f) {
    if (t.size() != f.size()) throw InvalidInput("cumulative_simpson: length mismatch");
    const std::size_t n = t.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    if (n == 2) {
        out[1] = 0.5 * (f[0] + f[1]) * (t[1] - t[0]);
        return out;
    }
    std::size_t i = 0;
    for (; i + 2 < n; i += 2) {
        const double x0 = t[i], x1 = t[i + 1], x2 = t[i + 2];
        out[i + 1] = out[i] + parabola_integral(x0, x1, x2, f[i], f[i + 1], f[i + 2], x1 - x0);
        out[i + 2] = out[i] + parabola_integral(x0, x1, x2, f[i], f[i + 1], f[i + 2], x2 - x0);
    }
    if (i + 1 < n) {
        // one interval left: parabola through the last three nodes
        const std::size_t a = n - 3;
        const double whole = parabola_integral(t[a], t[a + 1], t[a + 2], f[a], f[a + 1], f[a + 2],
                                               t[a + 2] - t[a]);
        const double head = parabola_integral(t[a], t[a + 1], t[a + 2], f[a], f[a + 1], f[a + 2],
                                              t[a + 1] - t[a]);
        out[n - 1] = out[n - 2] + (whole - head);
    }
    return out;
}

std::vector<double> cumulative_integral(std::span<const double> t, std::span<const double> f) {
    if (t.size() != f.size()) throw InvalidInput("cumulative_integral: length mismatch");
    const std::size_t n = t.size();
    if (n < 4) return cumulative_simpson(t, f);
    std::vector<double> out(n, 0.0);
    const double g = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        // cubic through the four nodes around [t_i, t_{i+1}], two-point Gauss on the interval
        const std::size_t w = std::min(i > 0 ? i - 1 : 0, n - 4);
        const auto nodes = t.subspan(w, 4);
        const double mid = 0.5 * (t[i] + t[i + 1]);
        const double half = 0.5 * (t[i + 1] - t[i]);
        double sum = 0.0;
        for (double x : {mid - g * half, mid + g * half}) {
            const auto lw = fd_weights(x, nodes, 0);
            for (std::size_t k = 0; k < 4; ++k) sum += lw[0][k] * f[w + k];
        }
        out[i + 1] = out[i] + half * sum;
    }
    return out;
}

double simpson(std::span<const double> t, std::span<const double> f) {
    const auto c = cumulative_simpson(t, f);
    return c.empty() ? 0.0 : c.back();
}

HermiteWeights quintic_hermite_basis(double u) {
    const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
    return {{
        1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5,
        u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5,
        0.5 * (u2 - 3.0 * u3 + 3.0 * u4 - u5),
        10.0 * u3 - 15.0 * u4 + 6.0 * u5,
        -4.0 * u3 + 7.0 * u4 - 3.0 * u5,
        0.5 * (u3 - 2.0 * u4 + u5),
    }};
}

HermiteWeights quintic_hermite_basis_du(double u) {
    const double u2 = u * u, u3 = u2 * u, u4 = u3 * u;
    return {{
        -30.0 * u2 + 60.0 * u3 - 30.0 * u4,
        1.0 - 18.0 * u2 + 32.0 * u3 - 15.0 * u4,
        0.5 * (2.0 * u - 9.0 * u2 + 12.0 * u3 - 5.0 * u4),
        30.0 * u2 - 60.0 * u3 + 30.0 * u4,
        -12.0 * u2 + 28.0 * u3 - 15.0 * u4,
        0.5 * (3.0 * u2 - 8.0 * u3 + 5.0 * u4),
    }};
}

HermiteWeights quintic_hermite_basis_du2(double u) {
    const double u2 = u * u, u3 = u2 * u;
    return {{
        -60.0 * u + 180.0 * u2 - 120.0 * u3,
        -36.0 * u + 96.0 * u2 - 60.0 * u3,
        0.5 * (2.0 - 18.0 * u + 36.0 * u2 - 20.0 * u3),
        60.0 * u - 180.0 * u2 + 120.0 * u3,
        -24.0 * u + 84.0 * u2 - 60.0 * u3,
        0.5 * (6.0 * u - 24.0 * u2 + 20.0 * u3),
    }};
}

double linear_interpolate(std::span<const double> t, std::span<const double> f, double x) {
    if (t.empty()) return 0.0;
    if (x <= t.front()) return f.front();
    if (x >= t.back()) return f.back();
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
    const double w = (x - t[i]) / (t[i + 1] - t[i]);
    return (1.0 - w) * f[i] + w * f[i + 1];
}

double cubic_interpolate(std::span<const double> t, std::span<const double> f, double x) {
    const std::size_t n = t.size();
    if (n < 4) return linear_interpolate(t, f, x);
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
    i = std::min(i, n - 2);
    const std::size_t first = std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, n - 4);
    double sum = 0.0;
    for (std::size_t a = first; a < first + 4; ++a) {
        double basis = 1.0;
        for (std::size_t b = first; b < first + 4; ++b) {
            if (b != a) basis *= (x - t[b]) / (t[a] - t[b]);
        }
        sum += basis * f[a];
    }
    return sum;
}

}  // namespace qcurve::numerics
