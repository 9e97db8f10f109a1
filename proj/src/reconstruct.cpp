#include "qcurve/reconstruct.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qcurve/errors.hpp"

namespace qcurve {

namespace {

void require_unit(const Quaternion& v, const char* what) {
    if (std::abs(norm(v) - 1.0) > 1e-9) {
        std::ostringstream os;
        os.precision(17);
        os << what << " must have unit norm, got |" << what << "| = " << norm(v);
        throw InvalidInput(os.str());
    }
}

struct OdeState {
    Quaternion q;
    Quaternion v;
};

class CurvatureField {
public:
    explicit CurvatureField(const CurvatureProfile& p) : p_(p) {}

    Quaternion at_node(std::size_t i) const { return p_.kappa(i); }
    Quaternion at(double t) const {
        return {0.0, numerics::cubic_interpolate(p_.t, p_.k1, t),
                numerics::cubic_interpolate(p_.t, p_.k2, t),
                numerics::cubic_interpolate(p_.t, p_.k3, t)};
    }

private:
    const CurvatureProfile& p_;
};

// One RK4 step of (q, v)' = (v, kappa v) from node `from` to node `to`.
OdeState rk4_step(const CurvatureField& kappa, const std::vector<double>& t, std::size_t from,
                  std::size_t to, const OdeState& s) {
    const double h = t[to] - t[from];
    const Quaternion ka = kappa.at_node(from);
    const Quaternion km = kappa.at(0.5 * (t[from] + t[to]));
    const Quaternion kb = kappa.at_node(to);

    const Quaternion v1 = s.v;
    const Quaternion a1 = ka * v1;
    const Quaternion v2 = s.v + (0.5 * h) * a1;
    const Quaternion a2 = km * v2;
    const Quaternion v3 = s.v + (0.5 * h) * a2;
    const Quaternion a3 = km * v3;
    const Quaternion v4 = s.v + h * a3;
    const Quaternion a4 = kb * v4;

    return {s.q + (h / 6.0) * (v1 + 2.0 * v2 + 2.0 * v3 + v4),
            s.v + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)};
}

void validate_profile(const CurvatureProfile& p) {
    const std::size_t n = p.t.size();
    if (p.k1.size() != n || p.k2.size() != n || p.k3.size() != n) {
        throw InvalidInput("curvature profile: component arrays do not match the grid length");
    }
    if (n < kMinCurveNodes) throw InvalidInput("curvature profile: at least 5 nodes required");
    numerics::require_strictly_increasing(p.t, "curvature grid");
}

// Fine grid with every interval split in two, magnitudes carried over by cubic interpolation.
ReconstructionSpec refine(const ReconstructionSpec& spec) {
    ReconstructionSpec fine = spec;
    fine.t.clear();
    fine.kappa_mag.clear();
    for (std::size_t i = 0; i + 1 < spec.t.size(); ++i) {
        const double mid = 0.5 * (spec.t[i] + spec.t[i + 1]);
        fine.t.push_back(spec.t[i]);
        fine.kappa_mag.push_back(spec.kappa_mag[i]);
        fine.t.push_back(mid);
        fine.kappa_mag.push_back(numerics::cubic_interpolate(spec.t, spec.kappa_mag, mid));
    }
    fine.t.push_back(spec.t.back());
    fine.kappa_mag.push_back(spec.kappa_mag.back());
    return fine;
}

}  // namespace

void ReconstructionSpec::validate() const {
    if (t.size() != kappa_mag.size()) {
        throw InvalidInput("reconstruction: grid has " + std::to_string(t.size()) +
                           " nodes but kappa_mag has " + std::to_string(kappa_mag.size()));
    }
    if (t.size() < kMinCurveNodes) throw InvalidInput("reconstruction: at least 5 nodes required");
    numerics::require_strictly_increasing(t, "reconstruction grid");
    for (std::size_t i = 0; i < kappa_mag.size(); ++i) {
        if (!std::isfinite(kappa_mag[i]) || kappa_mag[i] < 0.0) {
            throw InvalidInput("reconstruction: kappa_mag must be finite and nonnegative (index " +
                               std::to_string(i) + ")");
        }
    }
    if (std::abs(omega.x0) > 1e-9) throw InvalidInput("reconstruction: omega must be pure imaginary");
    require_unit(omega, "omega");
    require_unit(V0, "V0");
    if (!std::isfinite(phi0)) throw InvalidInput("reconstruction: phi0 must be finite");
}

CurveSamples reconstruct_closed_form(const ReconstructionSpec& spec) {
    spec.validate();
    const std::size_t n = spec.t.size();
    const auto turning = numerics::cumulative_integral(spec.t, spec.kappa_mag);
    std::vector<double> cos_phase(n), sin_phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        cos_phase[i] = std::cos(turning[i] + spec.phi0);
        sin_phase[i] = std::sin(turning[i] + spec.phi0);
    }
    const auto x = numerics::cumulative_integral(spec.t, cos_phase);
    const auto y = numerics::cumulative_integral(spec.t, sin_phase);
    const Quaternion omega = spec.omega.imag() / norm(spec.omega.imag());
    const Quaternion frame =
        conj(Quaternion(std::cos(spec.phi0)) + std::sin(spec.phi0) * omega) * spec.V0;

    CurveSamples out;
    out.t = spec.t;
    out.q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.q[i] = spec.P0 + (Quaternion(x[i]) + y[i] * omega) * frame;
    }
    out.meta = "reconstruction closed-form";
    return out;
}

CurvatureProfile profile_from_spec(const ReconstructionSpec& spec) {
    spec.validate();
    const Quaternion omega = spec.omega.imag() / norm(spec.omega.imag());
    CurvatureProfile p;
    for (std::size_t i = 0; i < spec.t.size(); ++i) p.push_back(spec.t[i], spec.kappa_mag[i] * omega);
    return p;
}

CurveSamples reconstruct_ode(const CurvatureProfile& kappa, const Quaternion& P0,
                             const Quaternion& V0, std::size_t anchor) {
    validate_profile(kappa);
    require_unit(V0, "V0");
    const std::size_t n = kappa.t.size();
    if (anchor >= n) throw InvalidInput("reconstruct_ode: anchor node out of range");

    const CurvatureField field(kappa);
    CurveSamples out;
    out.t = kappa.t;
    out.q.resize(n);
    out.q[anchor] = P0;
    OdeState s{P0, V0};
    for (std::size_t i = anchor; i + 1 < n; ++i) {
        s = rk4_step(field, kappa.t, i, i + 1, s);
        out.q[i + 1] = s.q;
    }
    s = {P0, V0};
    for (std::size_t i = anchor; i > 0; --i) {
        s = rk4_step(field, kappa.t, i, i - 1, s);
        out.q[i - 1] = s.q;
    }
    out.meta = "reconstruction rk4";
    return out;
}

CurveSamples reconstruct_symplectic(std::span<const double> t, std::span<const double> c_mag,
                                    double phi0, Complex P0, Complex Q0) {
    if (t.size() != c_mag.size()) throw InvalidInput("reconstruct_symplectic: length mismatch");
    if (t.size() < kMinCurveNodes) throw InvalidInput("reconstruct_symplectic: at least 5 nodes required");
    numerics::require_strictly_increasing(t, "reconstruction grid");
    for (double c : c_mag) {
        if (!std::isfinite(c) || c < 0.0) throw InvalidInput("reconstruct_symplectic: |c| must be finite and nonnegative");
    }
    if (!std::isfinite(phi0) || !std::isfinite(P0.real()) || !std::isfinite(P0.imag()) ||
        !std::isfinite(Q0.real()) || !std::isfinite(Q0.imag())) {
        throw InvalidInput("reconstruct_symplectic: constants must be finite");
    }
    const std::size_t n = t.size();
    const auto turning = numerics::cumulative_integral(t, c_mag);
    std::vector<double> re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex dz0 = std::polar(std::numbers::sqrt2 / 2.0, turning[i]);
        re[i] = dz0.real();
        im[i] = dz0.imag();
    }
    const auto int_re = numerics::cumulative_integral(t, re);
    const auto int_im = numerics::cumulative_integral(t, im);
    const Complex phase = std::polar(1.0, phi0);

    CurveSamples out;
    out.t.assign(t.begin(), t.end());
    out.q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex Z(int_re[i], int_im[i]);
        out.q[i] = from_symplectic(P0 + Z, Q0 + phase * Z);
    }
    out.meta = "reconstruction symplectic";
    return out;
}

UniquenessReport uniqueness_check(const ReconstructionSpec& spec, Perturbation perturbation) {
    spec.validate();
    UniquenessReport report;
    report.perturbation = perturbation;
    CurveSamples a, b;
    std::size_t stride = 1;
    if (perturbation == Perturbation::AlternateIntegrator) {
        a = reconstruct_closed_form(spec);
        b = reconstruct_ode(profile_from_spec(spec), spec.P0, spec.V0);
    } else {
        a = reconstruct_ode(profile_from_spec(spec), spec.P0, spec.V0);
        b = reconstruct_ode(profile_from_spec(refine(spec)), spec.P0, spec.V0);
        stride = 2;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        report.max_deviation = std::max(report.max_deviation, norm(a.q[i] - b.q[i * stride]));
    }
    report.nodes_compared = a.size();
    return report;
}

}  // namespace qcurve
