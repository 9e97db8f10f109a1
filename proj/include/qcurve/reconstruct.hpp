#pragma once

#include <vector>

#include "qcurve/curve.hpp"
#include "qcurve/frenet.hpp"

namespace qcurve {

/// Data of the fundamental theorem: curvature magnitude along a grid, a
/// constant curvature direction, a phase and the initial point / velocity.
struct ReconstructionSpec {
    std::vector<double> t;
    std::vector<double> kappa_mag;
    Quaternion omega = Quaternion::i();
    double phi0 = 0.0;
    Quaternion P0{0.0};
    Quaternion V0{1.0};

    /// Throws InvalidInput on any violated invariant.
    void validate() const;
};

/// q(t) = P0 + [x(t) + omega y(t)] R with
///   x = \int cos(\int |k| + phi0),  y = \int sin(\int |k| + phi0)
/// (both integrals by cumulative_integral) and R = conj(cos phi0 + omega sin phi0) V0,
/// so that q(t0) = P0 and q'(t0) = V0.  R = 1 when V0 = cos phi0 + omega sin phi0.
CurveSamples reconstruct_closed_form(const ReconstructionSpec& spec);

/// Classic RK4 on (q, q')' = (q', kappa(t) q') over the profile grid.
/// Stage values of kappa between nodes come from cubic interpolation of the
/// sampled components.  Integration starts at node `anchor` (forward and
/// backward), where q = P0 and q' = V0.
CurveSamples reconstruct_ode(const CurvatureProfile& kappa, const Quaternion& P0,
                             const Quaternion& V0, std::size_t anchor = 0);

/// Profile kappa(t) = |kappa(t)| omega on the spec grid.
CurvatureProfile profile_from_spec(const ReconstructionSpec& spec);

/// Symplectic general solution: z0' = e^{i \int |c|}/sqrt2, z1' = z0' e^{i phi0},
/// z0 = P0 + \int z0', z1 = Q0 + e^{i phi0} \int z0'.  The 1/sqrt2 keeps the
/// curve unit speed, so its complex curvature is |c| e^{i(phi0 + pi/2)}.
CurveSamples reconstruct_symplectic(std::span<const double> t, std::span<const double> c_mag,
                                    double phi0, Complex P0, Complex Q0);

enum class Perturbation {
    AlternateIntegrator,  ///< closed form vs RK4 on the same grid
    HalvedStep,           ///< RK4 on the grid vs RK4 on the grid refined by 2
};

struct UniquenessReport {
    double max_deviation = 0.0;
    Perturbation perturbation = Perturbation::AlternateIntegrator;
    std::size_t nodes_compared = 0;
};

/// Two independent reconstructions of the same data; reports their largest
/// pointwise distance on the common nodes.
UniquenessReport uniqueness_check(const ReconstructionSpec& spec, Perturbation perturbation);

}  // namespace qcurve
