#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qcurve/curve.hpp"
#include "qcurve/frenet.hpp"
#include "qcurve/reconstruct.hpp"

namespace qcurve::cli {

enum class SpecKind { Samples, BuiltinPolar, BuiltinSymplectic, Reconstruction, CurvatureProfile };

std::string to_string(SpecKind kind);

/// A parsed curve spec file.  Every kind resolves to a sampled curve; the
/// reconstruction kinds also keep their curvature data.
struct CurveSpec {
    SpecKind kind = SpecKind::Samples;
    std::string source;                          ///< file name, for messages
    CurveSamples curve;
    std::optional<ReconstructionSpec> reconstruction;
    std::optional<qcurve::CurvatureProfile> profile;
    Quaternion P0{0.0};
    Quaternion V0{1.0};
    std::size_t anchor = 0;                      ///< RK4 start node of curvature-profile specs
};

/// Reads and validates a JSON spec.  Throws SpecError with "file:line: message".
CurveSpec load_spec(const std::filesystem::path& path);

/// Same, from text already in memory (name is used in messages and to resolve
/// relative CSV paths).
CurveSpec parse_spec(const std::string& text, const std::filesystem::path& name);

}  // namespace qcurve::cli
