#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "json.hpp"
#include "qcurve/errors.hpp"
#include "qcurve/evolve.hpp"

namespace qcurve::cli {

namespace {

constexpr double kAlgebraTol = 1e-12;
constexpr double kRepresentableResidual = 1e-3;

template <typename F>
void interior(std::size_t n, F&& f) {
    const std::size_t m = interior_margin(n);
    for (std::size_t i = m; i + m < n; ++i) f(i);
}

Check algebra_orthogonality(const CurveSamples& c) {
    double worst = 0.0;
    for (const Quaternion& q : c.q) {
        const double n2 = norm2(q);
        if (n2 == 0.0) continue;
        for (int e = 1; e <= 3; ++e) {
            const Quaternion u = Quaternion::unit(e);
            worst = std::max({worst, std::abs(scalar_product(q, u * q)) / n2,
                              std::abs(scalar_product(q, q * u)) / n2});
        }
    }
    return Check::measure("quaternion_orthogonality", worst, kAlgebraTol);
}

Check roundtrip(const CurveSamples& c, const std::string& name,
                const std::function<Quaternion(const Quaternion&)>& there_and_back) {
    double worst = 0.0;
    for (const Quaternion& q : c.q) {
        const double n = norm(q);
        if (n == 0.0) continue;
        worst = std::max(worst, norm(there_and_back(q) - q) / n);
    }
    return Check::measure(name, worst, kAlgebraTol);
}

// Relative errors are taken against max(|x_i|, 1e-3 max|x|, 1e-6) so that
// nodes where the reference passes through zero do not dominate.
double relative_floor(const std::vector<double>& magnitudes) {
    const double top = magnitudes.empty() ? 0.0 : *std::max_element(magnitudes.begin(), magnitudes.end());
    return std::max(1e-3 * top, 1e-6);
}

Check tangent_acceleration(const CurveSamples& unit) {
    const auto d = derivatives(unit);
    std::vector<double> acc(unit.size());
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = norm(d.d2[i]);
    const double floor = relative_floor(acc);
    double worst = 0.0;
    interior(unit.size(), [&](std::size_t i) {
        worst = std::max(worst, std::abs(scalar_product(d.d1[i], d.d2[i])) / std::max(acc[i], floor));
    });
    return Check::measure("tangent_acceleration_orthogonal", worst, 1e-4);
}

Check frenet_completeness(const CurveSamples& c) {
    const auto p = curvature_cartesian(c);
    double worst = 0.0;
    interior(p.size(), [&](std::size_t i) { worst = std::max(worst, p.residual[i]); });
    return Check::measure("frenet_residual", worst, 5e-4);
}

// d/dt (q'/|q'|) against kappa q' on the raw parametrization.
Check gauge_covariance(const CurveSamples& c) {
    const auto d = derivatives(c);
    CurveSamples T;
    T.t = c.t;
    for (const Quaternion& v : d.d1) T.q.push_back(v / norm(v));
    const auto dT = derivatives(T);
    std::vector<Quaternion> expected(c.size());
    std::vector<double> mag(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        expected[i] = cartesian_curvature(d.d1[i], d.d2[i]) * d.d1[i];
        mag[i] = norm(expected[i]);
    }
    const double floor = relative_floor(mag);
    double worst = 0.0;
    interior(c.size(), [&](std::size_t i) {
        worst = std::max(worst, norm(dT.d1[i] - expected[i]) / std::max(mag[i], floor));
    });
    return Check::measure("tangent_derivative_gauge", worst, 1e-3);
}

Check reconstruct_of_extract(const CurveSamples& unit) {
    const std::string name = "reconstruct_of_extract";
    const auto profile = curvature_cartesian(unit, FrenetOptions{.compute_residual = false, .regularity_threshold = std::nullopt});
    const auto d = derivatives(unit);
    const std::size_t mid = unit.size() / 2;
    const auto back = reconstruct_ode(profile, unit.q[mid], d.d1[mid] / norm(d.d1[mid]), mid);
    double worst = 0.0;
    interior(unit.size(), [&](std::size_t i) { worst = std::max(worst, norm(back.q[i] - unit.q[i])); });
    return Check::measure(name, worst, 1e-4);
}

Check extract_of_reconstruct(const CurvatureProfile& profile, const Quaternion& P0,
                             const Quaternion& V0, std::size_t anchor) {
    const auto curve = reconstruct_ode(profile, P0, V0, anchor);
    const auto back = curvature_cartesian(curve, FrenetOptions{.compute_residual = false, .regularity_threshold = std::nullopt});
    double worst = 0.0;
    interior(profile.size(), [&](std::size_t i) {
        worst = std::max(worst, norm(back.kappa(i) - profile.kappa(i)));
    });
    return Check::measure("extract_of_reconstruct", worst, 1e-3);
}

void evolute_checks(const CurveSamples& unit, std::vector<Check>& out) {
    EvoluteResult e;
    try {
        e = evolute(unit);
    } catch (const DomainError& err) {
        out.push_back(Check::untestable("evolute_tangent_orthogonal", err.what()));
        out.push_back(Check::untestable("evolute_curvature_relation", err.what()));
        return;
    }
    out.push_back(evolute_tangent_check(unit, e));
    out.push_back(evolute_curvature_relation(unit, e));
}

void evolvent_checks(const CurveSamples& unit, std::vector<Check>& out) {
    const double lambda0 = ArcLengthMap(unit).total() + 1.0;
    const auto ec = evolvent_curvature(unit, lambda0);
    out.push_back(ec.agreement);
    out.push_back(ec.orthogonality);
    try {
        out.push_back(evolute_of_evolvent_roundtrip(unit, lambda0));
    } catch (const InvalidInput& err) {
        out.push_back(Check::untestable("evolute_of_evolvent_roundtrip", err.what()));
    }
}

void symplectic_checks(const CurveSamples& unit, std::vector<Check>& out) {
    const auto p = curvature_symplectic(unit);
    double residual = 0.0;
    interior(p.size(), [&](std::size_t i) { residual = std::max(residual, p.residual[i]); });
    const char* names[] = {"symplectic_evolute_agreement", "evolute_symplectic_curvature_relation"};
    if (!(residual < kRepresentableResidual)) {
        Check c = Check::untestable("symplectic_representable",
                                    "normal acceleration leaves q' span{j, k}; complex curvature cannot "
                                    "represent this curve");
        c.measured = residual;
        c.tolerance = kRepresentableResidual;
        out.push_back(c);
        for (const char* n : names) out.push_back(Check::untestable(n, "curve not symplectically representable"));
        return;
    }
    out.push_back(Check::measure("symplectic_representable", residual, kRepresentableResidual));
    EvoluteResult cart, symp;
    try {
        cart = evolute(unit);
        symp = evolute_symplectic(unit);
    } catch (const DomainError& err) {
        for (const char* n : names) out.push_back(Check::untestable(n, err.what()));
        return;
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < cart.curve.size(); ++k) {
        worst = std::max(worst, norm(cart.curve.q[k] - symp.curve.q[k]));
    }
    out.push_back(Check::measure(names[0], worst, 1e-6));
    out.push_back(evolute_curvature_relation(unit, symp, Picture::Symplectic));
}

}  // namespace

std::vector<Check> verify_curve(const CurveSpec& spec) {
    const CurveSamples& c = spec.curve;
    std::vector<Check> out;
    out.push_back(algebra_orthogonality(c));
    out.push_back(roundtrip(c, "polar_roundtrip", [](const Quaternion& q) { return from_polar(to_polar(q)); }));
    out.push_back(roundtrip(c, "symplectic_polar_roundtrip",
                            [](const Quaternion& q) { return from_symplectic_polar(to_symplectic_polar(q)); }));

    const auto d = derivatives(c);
    const auto sp = speeds(d);
    const double threshold = default_regularity_threshold(d);
    const auto slowest = std::min_element(sp.begin(), sp.end());
    Check regular = Check::exceed("regularity", *slowest, threshold);
    if (regular.failed()) regular.flagged.push_back(c.t[static_cast<std::size_t>(slowest - sp.begin())]);
    out.push_back(regular);

    static const char* dependent[] = {
        "tangent_acceleration_orthogonal", "frenet_residual", "tangent_derivative_gauge",
        "evolute_tangent_orthogonal", "evolute_curvature_relation", "evolvent_curvature_law",
        "evolvent_tangent_orthogonal", "evolute_of_evolvent_roundtrip", "symplectic_representable",
        "symplectic_evolute_agreement", "evolute_symplectic_curvature_relation", "reconstruct_of_extract",
    };
    CurveSamples unit;
    std::string why;
    if (regular.passed()) {
        try {
            unit = reparametrize_by_arc_length(c);
        } catch (const DomainError& err) {
            why = err.what();
        }
    } else {
        why = "curve is not regular";
    }
    if (!why.empty()) {
        for (const char* n : dependent) out.push_back(Check::untestable(n, why));
    } else {
        out.push_back(tangent_acceleration(unit));
        out.push_back(frenet_completeness(c));
        out.push_back(gauge_covariance(c));
        evolute_checks(unit, out);
        evolvent_checks(unit, out);
        symplectic_checks(unit, out);
        out.push_back(reconstruct_of_extract(unit));
    }

    if (spec.reconstruction) {
        const auto u = uniqueness_check(*spec.reconstruction, Perturbation::AlternateIntegrator);
        out.push_back(Check::measure("reconstruct_uniqueness", u.max_deviation, 1e-5));
        out.push_back(extract_of_reconstruct(profile_from_spec(*spec.reconstruction), spec.P0, spec.V0, 0));
    }
    if (spec.profile) out.push_back(extract_of_reconstruct(*spec.profile, spec.P0, spec.V0, spec.anchor));
    return out;
}

bool all_passed(const std::vector<Check>& checks) {
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.failed(); });
}

std::string report_json(const CurveSpec& spec, const std::vector<Check>& checks) {
    using nlohmann::ordered_json;
    ordered_json root;
    root["spec"] = spec.source;
    root["kind"] = to_string(spec.kind);
    root["nodes"] = spec.curve.size();
    ordered_json list = ordered_json::array();
    std::size_t counts[3] = {0, 0, 0};
    for (const Check& c : checks) {
        ordered_json j;
        j["name"] = c.name;
        j["status"] = std::string(to_string(c.status));
        j["measured"] = c.measured;
        j["tolerance"] = c.tolerance;
        j["flagged"] = c.flagged;
        j["note"] = c.note;
        list.push_back(std::move(j));
        ++counts[static_cast<int>(c.status)];
    }
    root["checks"] = std::move(list);
    root["summary"] = {{"pass", counts[0]}, {"fail", counts[1]}, {"untestable", counts[2]}};
    root["ok"] = all_passed(checks);
    return root.dump(2) + "\n";
}

}  // namespace qcurve::cli
