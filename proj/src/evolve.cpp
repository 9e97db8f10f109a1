#include "qcurve/evolve.hpp"

#include <algorithm>
#include <cmath>

#include "qcurve/errors.hpp"

namespace qcurve {

namespace {

using Range = std::pair<std::size_t, std::size_t>;  // [begin, end)

// Evolutes whose speed never exceeds this are treated as a single point.
constexpr double kDegenerateSpeed = 1e-4;
// Nodes whose speed is below this fraction of the run maximum sit next to a
// cusp or vertex and are left out of ratio checks.
constexpr double kLowSpeedFraction = 1e-2;
constexpr std::size_t kMinRun = 9;

// Largest speed away from the run ends, where one-sided stencils are noisy.
double interior_max(const std::vector<double>& sp) {
    const std::size_t m = interior_margin(sp.size());
    double out = 0.0;
    for (std::size_t k = m; k + m < sp.size(); ++k) out = std::max(out, sp[k]);
    return out;
}

// Source parameter t lies at least interior_margin nodes away from both ends of c.
bool interior_of(const CurveSamples& c, double t) {
    const std::size_t m = interior_margin(c.size());
    return c.size() > 2 * m && t >= c.t[m] && t <= c.t[c.size() - 1 - m];
}

std::vector<Range> runs_of(const std::vector<bool>& keep) {
    std::vector<Range> out;
    std::size_t i = 0;
    while (i < keep.size()) {
        if (!keep[i]) { ++i; continue; }
        std::size_t j = i;
        while (j < keep.size() && keep[j]) ++j;
        out.emplace_back(i, j);
        i = j;
    }
    return out;
}

CurveSamples slice(const CurveSamples& c, Range r) {
    CurveSamples s;
    s.t.assign(c.t.begin() + r.first, c.t.begin() + r.second);
    s.q.assign(c.q.begin() + r.first, c.q.begin() + r.second);
    s.meta = c.meta;
    return s;
}

// Runs of the evolute whose source nodes are consecutive.
std::vector<Range> contiguous_runs(const EvoluteResult& e) {
    std::vector<Range> out;
    std::size_t begin = 0;
    for (std::size_t k = 1; k <= e.source_index.size(); ++k) {
        if (k == e.source_index.size() || e.source_index[k] != e.source_index[k - 1] + 1) {
            out.emplace_back(begin, k);
            begin = k;
        }
    }
    return out;
}

void require_unit_speed(const CurveDerivatives& d, double tol, const char* what) {
    if (!is_unit_speed(d, tol)) {
        throw InvalidInput(std::string(what) +
                           " requires an arc-length parametrized curve (|q'| = 1); "
                           "reparametrize by arc length first");
    }
}

template <typename CenterOffset>
EvoluteResult build_evolute(const CurveSamples& c, const EvolveOptions& opts, CenterOffset&& offset) {
    const auto d = derivatives(c, BoundaryStencil::FourthOrder);
    require_regular(d);
    require_unit_speed(d, opts.unit_speed_tolerance, "evolute");
    EvoluteResult e;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Quaternion kappa = cartesian_curvature(d.d1[i], d.d2[i]);
        const double mag = norm(kappa);
        if (mag < opts.singular_threshold) {
            e.singular_nodes.push_back(c.t[i]);
            continue;
        }
        e.curve.t.push_back(c.t[i]);
        e.curve.q.push_back(c.q[i] + offset(d.d1[i], d.d2[i], kappa));
        e.omega_used.push_back(kappa / mag);
        e.source_index.push_back(i);
    }
    if (e.curve.t.empty()) throw DomainError("straight line has no evolute (curvature vanishes everywhere)");
    e.curve.meta = "evolute of " + (c.meta.empty() ? std::string("curve") : c.meta);
    return e;
}

}  // namespace

std::size_t interior_margin(std::size_t nodes) { return std::max<std::size_t>(4, nodes / 50); }

EvoluteResult evolute(const CurveSamples& c, const EvolveOptions& opts) {
    return build_evolute(c, opts, [](const Quaternion& v, const Quaternion&, const Quaternion& kappa) {
        const double mag = norm(kappa);
        return (kappa / mag) * v / mag;
    });
}

EvoluteResult evolute_symplectic(const CurveSamples& c, const EvolveOptions& opts) {
    auto e = build_evolute(c, opts, [](const Quaternion& v, const Quaternion& a, const Quaternion&) {
        const Complex cc = symplectic_curvature(v, a);
        return v * from_symplectic(cc / std::norm(cc), 0.0) * Quaternion::j();
    });
    e.curve.meta = "symplectic " + e.curve.meta;
    return e;
}

Check evolute_tangent_check(const CurveSamples& c, const EvoluteResult& e) {
    const std::string name = "evolute_tangent_orthogonal";
    const auto dc = derivatives(c);
    double ratio_max = 0.0;
    double speed_max = 0.0;
    std::size_t used = 0;
    Check out;
    for (const Range& r : contiguous_runs(e)) {
        if (r.second - r.first < kMinRun) continue;
        const auto de = derivatives(slice(e.curve, r));
        const auto sp = speeds(de);
        const double run_max = interior_max(sp);
        speed_max = std::max(speed_max, run_max);
        if (run_max < kDegenerateSpeed) continue;
        const std::size_t m = interior_margin(sp.size());
        for (std::size_t k = m; k + m < sp.size(); ++k) {
            const std::size_t src = e.source_index[r.first + k];
            if (sp[k] < kLowSpeedFraction * run_max) {
                out.flagged.push_back(c.t[src]);
                continue;
            }
            const Quaternion& v = dc.d1[src];
            ratio_max = std::max(ratio_max, std::abs(scalar_product(de.d1[k], v)) / (sp[k] * norm(v)));
            ++used;
        }
    }
    if (speed_max < kDegenerateSpeed) {
        return Check::untestable(name, "evolute degenerates to a point (q_E' ~ 0); check is vacuous");
    }
    if (used == 0) return Check::untestable(name, "no interior evolute nodes available");
    auto flagged = std::move(out.flagged);
    out = Check::measure(name, ratio_max, 1e-3);
    out.flagged = std::move(flagged);
    return out;
}

Check evolute_curvature_relation(const CurveSamples& c, const EvoluteResult& e, Picture picture) {
    const std::string name = picture == Picture::Cartesian ? "evolute_curvature_relation"
                                                           : "evolute_symplectic_curvature_relation";
    const CurveInterpolant source(c);
    double worst = 0.0;
    double speed_max = 0.0;
    std::size_t used = 0;
    std::vector<double> flagged;
    for (const Range& r : contiguous_runs(e)) {
        if (r.second - r.first < kMinRun) continue;
        const CurveSamples run = slice(e.curve, r);
        const auto de = derivatives(run);
        const auto sp = speeds(de);
        const double run_max = interior_max(sp);
        speed_max = std::max(speed_max, run_max);
        if (run_max < kDegenerateSpeed) continue;
        // split away from cusps of the evolute, where |q_E'| -> 0
        std::vector<bool> keep(sp.size());
        for (std::size_t k = 0; k < sp.size(); ++k) {
            keep[k] = sp[k] >= kLowSpeedFraction * run_max;
            if (!keep[k]) flagged.push_back(run.t[k]);
        }
        for (const Range& piece : runs_of(keep)) {
            if (piece.second - piece.first < kMinRun) continue;
            const CurveSamples part = slice(run, piece);
            const CurveInterpolant evo(part);
            const Reparametrization rp = arc_length_parametrization(part);
            const auto dr = derivatives(rp.curve);
            const std::size_t m = interior_margin(rp.curve.size());
            for (std::size_t k = m; k + m < rp.curve.size(); ++k) {
                const double t = rp.source_t[k];
                if (!interior_of(part, t)) continue;
                const double evo_speed = norm(evo.derivative(t));
                const Quaternion v = source.derivative(t);
                const Quaternion a = source.second_derivative(t);
                double deviation = 0.0;
                if (picture == Picture::Cartesian) {
                    const Quaternion expected = cartesian_curvature(v, a);
                    const Quaternion got = cartesian_curvature(dr.d1[k], dr.d2[k]) * evo_speed;
                    deviation = norm(got - expected) / norm(expected);
                } else {
                    const Complex expected = symplectic_curvature(v, a);
                    const Complex got = symplectic_curvature(dr.d1[k], dr.d2[k]) * evo_speed;
                    deviation = std::abs(got - expected) / std::abs(expected);
                }
                worst = std::max(worst, deviation);
                ++used;
            }
        }
    }
    if (speed_max < kDegenerateSpeed) {
        return Check::untestable(name, "relation untestable, evolute degenerate");
    }
    if (used == 0) return Check::untestable(name, "no regular evolute sub-interval long enough");
    Check out = Check::measure(name, worst, 5e-3);
    out.flagged = std::move(flagged);
    return out;
}

CurveSamples evolvent(const CurveSamples& c, double lambda0, const EvolveOptions& opts) {
    // L accumulates every boundary error, so use the high-order ends here
    const auto d = derivatives(c, BoundaryStencil::FourthOrder);
    require_regular(d);
    require_unit_speed(d, opts.unit_speed_tolerance, "evolvent");
    const ArcLengthMap L(c, d);
    CurveSamples out;
    out.t = c.t;
    out.q.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        out.q[i] = c.q[i] + (lambda0 - L.at_nodes()[i]) * d.d1[i];
    }
    out.meta = "evolvent of " + (c.meta.empty() ? std::string("curve") : c.meta);
    return out;
}

namespace {

bool in_window(const std::optional<Window>& w, double t) {
    return !w || (t >= w->first && t <= w->second);
}

}  // namespace

EvolventCurvature evolvent_curvature(const CurveSamples& c, double lambda0,
                                     std::optional<Window> window, const EvolveOptions& opts) {
    const auto d = derivatives(c, BoundaryStencil::FourthOrder);
    const CurveSamples qi = evolvent(c, lambda0, opts);
    const ArcLengthMap L(c, d);
    const CurveInterpolant source(c, d);

    EvolventCurvature out;
    std::vector<bool> keep(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double gap = lambda0 - L.at_nodes()[i];
        const Quaternion kappa = cartesian_curvature(d.d1[i], d.d2[i]);
        const double mag = norm(kappa);
        keep[i] = std::abs(gap) >= opts.singular_threshold && mag >= opts.singular_threshold;
        if (!keep[i]) {
            out.flagged.push_back(c.t[i]);
            continue;
        }
        out.predicted.push_back(c.t[i], (kappa / mag) / std::abs(gap));
    }

    const auto di = derivatives(qi);
    double ortho = 0.0, agree = 0.0;
    std::size_t ortho_used = 0, agree_used = 0;
    bool degenerate = false;
    for (const Range& r : runs_of(keep)) {
        if (r.second - r.first < kMinRun) continue;
        // orthogonality of q_I' and q' on the source grid
        double run_speed = 0.0;
        for (std::size_t i = r.first; i < r.second; ++i) run_speed = std::max(run_speed, norm(di.d1[i]));
        const std::size_t m = interior_margin(r.second - r.first);
        for (std::size_t i = r.first + m; i + m < r.second; ++i) {
            const double s = norm(di.d1[i]);
            if (!in_window(window, c.t[i]) || s < kLowSpeedFraction * run_speed) continue;
            ortho = std::max(ortho, std::abs(scalar_product(di.d1[i], d.d1[i])) / (s * norm(d.d1[i])));
            ++ortho_used;
        }
        // curvature of the arc-length reparametrized evolvent
        const CurveSamples part = slice(qi, r);
        if (!is_regular(part)) {
            degenerate = true;
            continue;
        }
        const Reparametrization rp = arc_length_parametrization(part);
        const auto dr = derivatives(rp.curve);
        const std::size_t mr = interior_margin(rp.curve.size());
        for (std::size_t k = mr; k + mr < rp.curve.size(); ++k) {
            const double t = rp.source_t[k];
            if (!in_window(window, t) || !interior_of(part, t)) continue;
            const Quaternion kappa = cartesian_curvature(source.derivative(t), source.second_derivative(t));
            const Quaternion expected = (kappa / norm(kappa)) / std::abs(lambda0 - L(t));
            const Quaternion got = cartesian_curvature(dr.d1[k], dr.d2[k]);
            agree = std::max(agree, norm(got - expected) / norm(expected));
            ++agree_used;
        }
    }
    if (agree_used > 0) {
        out.agreement = Check::measure("evolvent_curvature_law", agree, 1e-2);
    } else {
        out.agreement = Check::untestable("evolvent_curvature_law",
                                          degenerate ? "evolvent degenerate (|q_I'| = 0)"
                                                     : "no usable evolvent sub-interval");
    }
    if (ortho_used > 0) {
        out.orthogonality = Check::measure("evolvent_tangent_orthogonal", ortho, 1e-3);
    } else {
        out.orthogonality = Check::untestable("evolvent_tangent_orthogonal", "evolvent degenerate");
    }
    out.agreement.flagged = out.flagged;
    return out;
}

Check evolute_of_evolvent_roundtrip(const CurveSamples& c, double lambda0,
                                    std::optional<Window> window, const EvolveOptions& opts) {
    const std::string name = "evolute_of_evolvent_roundtrip";
    const auto d = derivatives(c);
    const CurveSamples qi = evolvent(c, lambda0, opts);
    const ArcLengthMap L(c, d);
    const CurveInterpolant source(c, d);

    // |q_I'| = |lambda0 - L| |kappa|: the evolvent stalls at cusps and wherever c is straight
    std::vector<bool> keep(c.size());
    std::vector<double> flagged;
    bool straight = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const bool flat = norm(cartesian_curvature(d.d1[i], d.d2[i])) < opts.singular_threshold;
        straight = straight || flat;
        keep[i] = !flat && std::abs(lambda0 - L.at_nodes()[i]) >= opts.singular_threshold;
        if (!keep[i]) flagged.push_back(c.t[i]);
    }
    const auto pieces = runs_of(keep);
    const bool any = std::any_of(pieces.begin(), pieces.end(),
                                 [](Range r) { return r.second - r.first >= kMinRun; });
    if (!any && straight) {
        Check out = Check::untestable(name, "evolvent degenerate (curve is straight), round trip untestable");
        out.flagged = std::move(flagged);
        return out;
    }
    if (!any) throw InvalidInput("evolute_of_evolvent_roundtrip: no non-singular sub-interval remains");

    double worst = 0.0;
    std::size_t used = 0;
    for (const Range& r : pieces) {
        if (r.second - r.first < kMinRun) continue;
        const CurveSamples part = slice(qi, r);
        if (!is_regular(part)) {
            return Check::untestable(name, "evolvent degenerate (|q_I'| = 0), round trip untestable");
        }
        const Reparametrization rp = arc_length_parametrization(part);
        EvoluteResult e;
        try {
            e = evolute(rp.curve, opts);
        } catch (const DomainError&) {
            return Check::untestable(name, "evolvent has no evolute");
        }
        const std::size_t m = interior_margin(rp.curve.size());
        for (std::size_t k = 0; k < e.curve.size(); ++k) {
            const std::size_t src = e.source_index[k];
            if (src < m || src + m >= rp.curve.size()) continue;
            const double t = rp.source_t[src];
            if (!in_window(window, t) || !interior_of(part, t)) continue;
            worst = std::max(worst, norm(e.curve.q[k] - source.value(t)));
            ++used;
        }
    }
    if (used == 0) return Check::untestable(name, "no interior nodes to compare");
    Check out = Check::measure(name, worst, 1e-3);
    out.flagged = std::move(flagged);
    return out;
}

}  // namespace qcurve
