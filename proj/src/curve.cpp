#include "qcurve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcurve/errors.hpp"

namespace qcurve {

namespace {

bool finite(const Quaternion& q) {
    return std::isfinite(q.x0) && std::isfinite(q.x1) && std::isfinite(q.x2) && std::isfinite(q.x3);
}

std::string format_t(double t) {
    std::ostringstream os;
    os.precision(17);
    os << t;
    return os.str();
}

// Weighted sum over a contiguous stencil [first, first + len).
Quaternion apply_stencil(const std::vector<Quaternion>& q, std::size_t first,
                         const std::vector<double>& w) {
    Quaternion r;
    for (std::size_t a = 0; a < w.size(); ++a) r += w[a] * q[first + a];
    return r;
}

}  // namespace

void CurveSamples::validate() const {
    if (t.size() != q.size()) {
        throw InvalidInput("curve: t has " + std::to_string(t.size()) + " nodes but q has " +
                           std::to_string(q.size()));
    }
    if (t.size() < kMinCurveNodes) {
        throw InvalidInput("curve: at least 5 nodes required, got " + std::to_string(t.size()));
    }
    numerics::require_strictly_increasing(t, "curve grid");
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!finite(q[i])) throw InvalidInput("curve: non-finite sample at index " + std::to_string(i));
    }
}

CurveSamples builtin_constant_curvature(const Quaternion& kappa, double phi0,
                                        std::span<const double> grid) {
    const Quaternion k = kappa.imag();
    const double mag = norm(k);
    if (mag == 0.0) throw DomainError("constant-curvature curve needs a nonzero curvature");
    const Quaternion omega = k / mag;
    CurveSamples c;
    c.t.assign(grid.begin(), grid.end());
    c.q.reserve(grid.size());
    for (double t : grid) {
        const double a = mag * t + phi0;
        c.q.push_back((Quaternion(std::cos(a)) + std::sin(a) * omega) / mag);
    }
    std::ostringstream meta;
    meta.precision(17);
    meta << "builtin-polar kappa=" << k << " phi0=" << phi0;
    c.meta = meta.str();
    return c;
}

CurveSamples builtin_symplectic(Complex c, double phi0, std::span<const double> grid) {
    const double mag = std::abs(c);
    if (mag == 0.0) throw DomainError("symplectic builtin curve needs a nonzero curvature");
    const double half = std::arg(c) / 2.0;
    const Complex left = std::polar(1.0, -half);
    const Complex right = std::polar(1.0, half);
    CurveSamples out;
    out.t.assign(grid.begin(), grid.end());
    out.q.reserve(grid.size());
    for (double t : grid) {
        const double a = mag * t + phi0;
        out.q.push_back(from_symplectic(std::cos(a) * left / mag, std::sin(a) * right / mag));
    }
    std::ostringstream meta;
    meta.precision(17);
    meta << "builtin-symplectic c=" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag()
         << "i phi0=" << phi0;
    out.meta = meta.str();
    return out;
}

CurveDerivatives derivatives(const CurveSamples& c) {
    return derivatives(c, BoundaryStencil::SecondOrder);
}

CurveDerivatives derivatives(const CurveSamples& c, BoundaryStencil boundary) {
    c.validate();
    const std::size_t n = c.size();
    CurveDerivatives d;
    d.t = c.t;
    d.d1.resize(n);
    d.d2.resize(n);
    d.stencil_order = 4;
    const std::span<const double> t(c.t);
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= 2 && i + 2 < n) {
            const auto w = numerics::fd_weights(t[i], t.subspan(i - 2, 5), 2);
            d.d1[i] = apply_stencil(c.q, i - 2, w[1]);
            d.d2[i] = apply_stencil(c.q, i - 2, w[2]);
        } else {
            // one-sided, anchored at the nearer end
            const bool high = boundary == BoundaryStencil::FourthOrder && n >= 6;
            const std::size_t len1 = high ? 5 : 3;
            const std::size_t len2 = high ? 6 : 4;
            const std::size_t first1 = i < 2 ? 0 : n - len1;
            const std::size_t first2 = i < 2 ? 0 : n - len2;
            const auto w1 = numerics::fd_weights(t[i], t.subspan(first1, len1), 1);
            const auto w2 = numerics::fd_weights(t[i], t.subspan(first2, len2), 2);
            d.d1[i] = apply_stencil(c.q, first1, w1[1]);
            d.d2[i] = apply_stencil(c.q, first2, w2[2]);
        }
    }
    return d;
}

std::vector<double> speeds(const CurveDerivatives& d) {
    std::vector<double> s(d.d1.size());
    std::transform(d.d1.begin(), d.d1.end(), s.begin(), [](const Quaternion& v) { return norm(v); });
    return s;
}

double default_regularity_threshold(const CurveDerivatives& d) {
    const auto s = speeds(d);
    return 1e-8 * *std::max_element(s.begin(), s.end());
}

void require_regular(const CurveDerivatives& d, std::optional<double> threshold) {
    const double limit = threshold.value_or(default_regularity_threshold(d));
    for (std::size_t i = 0; i < d.d1.size(); ++i) {
        const double v = norm(d.d1[i]);
        if (!(v > limit)) {
            throw IrregularCurve(d.t[i], "irregular curve at t=" + format_t(d.t[i]) +
                                             " (|q'| = " + format_t(v) + ")");
        }
    }
}

bool is_regular(const CurveSamples& c, std::optional<double> threshold) {
    const auto d = derivatives(c);
    const double limit = threshold.value_or(default_regularity_threshold(d));
    const auto s = speeds(d);
    return *std::min_element(s.begin(), s.end()) > limit;
}

std::vector<Quaternion> tangent(const CurveSamples& c, std::optional<double> threshold) {
    const auto d = derivatives(c);
    require_regular(d, threshold);
    std::vector<Quaternion> out(d.d1.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = d.d1[i] / norm(d.d1[i]);
    return out;
}

bool is_unit_speed(const CurveDerivatives& d, double tol) {
    return std::all_of(d.d1.begin(), d.d1.end(),
                       [tol](const Quaternion& v) { return std::abs(norm(v) - 1.0) <= tol; });
}

// ---------------------------------------------------------------------------

CurveInterpolant::CurveInterpolant(const CurveSamples& c)
    : CurveInterpolant(c, derivatives(c, BoundaryStencil::FourthOrder)) {}

CurveInterpolant::CurveInterpolant(const CurveSamples& c, const CurveDerivatives& d)
    : spline_(c.t, c.q, d.d1, d.d2) {}

namespace {

numerics::QuinticHermite<double> build_arc_length(const CurveSamples& c, const CurveDerivatives& d) {
    const std::size_t n = c.size();
    std::vector<double> speed(n), accel(n);
    for (std::size_t i = 0; i < n; ++i) {
        speed[i] = norm(d.d1[i]);
        accel[i] = speed[i] > 0.0 ? scalar_product(d.d2[i], d.d1[i]) / speed[i] : 0.0;
    }
    const auto cumulative = numerics::cumulative_integral(c.t, speed);
    return numerics::QuinticHermite<double>(c.t, cumulative, speed, accel);
}

}  // namespace

ArcLengthMap::ArcLengthMap(const CurveSamples& c)
    : ArcLengthMap(c, derivatives(c, BoundaryStencil::FourthOrder)) {}

ArcLengthMap::ArcLengthMap(const CurveSamples& c, const CurveDerivatives& d)
    : spline_(build_arc_length(c, d)) {}

double ArcLengthMap::inverse(double s) const {
    const auto& t = spline_.nodes();
    const auto& L = spline_.values();
    if (s <= L.front()) return t.front();
    if (s >= L.back()) return t.back();
    const auto it = std::upper_bound(L.begin(), L.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - L.begin()) - 1;
    double lo = t[i], hi = t[i + 1];
    // secant start, then safeguarded Newton on the C2 interpolant
    double x = lo + (hi - lo) * (s - L[i]) / (L[i + 1] - L[i]);
    for (int iter = 0; iter < 60; ++iter) {
        const double f = spline_.value(x) - s;
        if (f == 0.0) return x;
        if (f > 0.0) hi = x; else lo = x;
        const double df = spline_.derivative(x);
        double next = df > 0.0 ? x - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
        x = next;
    }
    return x;
}

double arc_length(const CurveSamples& c, double t_from, double t_to) {
    c.validate();
    const double lo = c.t.front(), hi = c.t.back();
    if (!(t_from >= lo && t_from <= hi && t_to >= lo && t_to <= hi)) {
        throw InvalidInput("arc_length: interval [" + format_t(t_from) + ", " + format_t(t_to) +
                           "] leaves the grid span [" + format_t(lo) + ", " + format_t(hi) + "]");
    }
    if (t_from == t_to) return 0.0;
    const ArcLengthMap L(c);
    return L(t_to) - L(t_from);
}

Reparametrization arc_length_parametrization(const CurveSamples& c) {
    const auto d = derivatives(c, BoundaryStencil::FourthOrder);
    require_regular(d);
    const ArcLengthMap L(c, d);
    const auto& nodes_L = L.at_nodes();
    for (std::size_t i = 1; i < nodes_L.size(); ++i) {
        if (!(nodes_L[i] > nodes_L[i - 1])) {
            throw DomainError("arc length is not increasing near t=" + format_t(c.t[i]) +
                              "; grid too coarse for this curve");
        }
    }
    const CurveInterpolant interp(c, d);
    const std::size_t n = c.size();
    Reparametrization out;
    out.curve.t = numerics::uniform_grid(0.0, L.total(), n);
    out.curve.q.resize(n);
    out.source_t.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double tk = k == 0 ? c.t.front() : (k + 1 == n ? c.t.back() : L.inverse(out.curve.t[k]));
        out.source_t[k] = tk;
        out.curve.q[k] = interp.value(tk);
    }
    out.curve.meta = c.meta.empty() ? "arc-length" : c.meta + " | arc-length";
    return out;
}

CurveSamples reparametrize_by_arc_length(const CurveSamples& c) {
    return arc_length_parametrization(c).curve;
}

}  // namespace qcurve
