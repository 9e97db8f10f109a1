#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qcurve/curve.hpp"
#include "qcurve/frenet.hpp"
#include "qcurve/report.hpp"

namespace qcurve {

struct EvolveOptions {
    /// |kappa| and |lambda0 - L| below this (curve units) are singular.
    double singular_threshold = 1e-6;
    /// Allowed deviation of node speeds from 1 for inputs that must be arc-length parametrized.
    double unit_speed_tolerance = 1e-3;
};

struct EvoluteResult {
    CurveSamples curve;                      ///< centers of curvature on the non-singular nodes
    std::vector<Quaternion> omega_used;      ///< kappa/|kappa| of the source, per output node
    std::vector<double> singular_nodes;      ///< source parameters with |kappa| ~ 0
    std::vector<std::size_t> source_index;   ///< source node of every output node
};

/// q_E = q + omega q'/|kappa| for an arc-length parametrized curve.
/// Throws InvalidInput for a non unit-speed curve and DomainError when every node is singular.
EvoluteResult evolute(const CurveSamples& c, const EvolveOptions& opts = {});

/// Symplectic form q_E = q + q' (c/|c|^2) j; agrees with evolute() on curves whose
/// acceleration lies in q' span{j, k}.
EvoluteResult evolute_symplectic(const CurveSamples& c, const EvolveOptions& opts = {});

/// Normalized |<q_E', q'>| over the interior of the evolute; untestable when the
/// evolute collapses to a point.
Check evolute_tangent_check(const CurveSamples& c, const EvoluteResult& e);

enum class Picture { Cartesian, Symplectic };

/// kappa_E |q_E'| = kappa (or c_E |q_E'| = c), with kappa_E measured on the arc-length
/// reparametrized evolute.  Measured value is the largest relative deviation.
Check evolute_curvature_relation(const CurveSamples& c, const EvoluteResult& e,
                                 Picture picture = Picture::Cartesian);

/// q_I = q + (lambda0 - L(t)) q' on the source grid; c must be unit speed.
CurveSamples evolvent(const CurveSamples& c, double lambda0, const EvolveOptions& opts = {});

struct EvolventCurvature {
    CurvatureProfile predicted;      ///< kappa_I = omega/|lambda0 - L| on the non-flagged nodes
    std::vector<double> flagged;     ///< nodes with lambda0 = L (cusps) or undefined omega
    Check agreement;                 ///< numerical kappa_I against the prediction
    Check orthogonality;             ///< <q_I', q'> ~ 0
};

/// Parameter window [lo, hi] limiting where numerical comparisons are made.
using Window = std::pair<double, double>;

EvolventCurvature evolvent_curvature(const CurveSamples& c, double lambda0,
                                     std::optional<Window> window = std::nullopt,
                                     const EvolveOptions& opts = {});

/// Evolute of the arc-length reparametrized evolvent compared with c.
/// Throws InvalidInput when no usable sub-interval remains.
Check evolute_of_evolvent_roundtrip(const CurveSamples& c, double lambda0,
                                    std::optional<Window> window = std::nullopt,
                                    const EvolveOptions& opts = {});

/// Nodes skipped at each end of a sampled curve when judging interior accuracy.
std::size_t interior_margin(std::size_t nodes);

}  // namespace qcurve
