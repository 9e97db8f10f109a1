#pragma once

#include <string>
#include <vector>

#include "qcurve/report.hpp"
#include "spec_file.hpp"

namespace qcurve::cli {

/// Runs every invariant check applicable to the spec's curve.  Checks that
/// cannot be evaluated on this curve come back untestable, never skipped.
std::vector<Check> verify_curve(const CurveSpec& spec);

/// True when no check failed (untestable checks do not count against).
bool all_passed(const std::vector<Check>& checks);

/// Report as pretty-printed JSON (checks in execution order).
std::string report_json(const CurveSpec& spec, const std::vector<Check>& checks);

}  // namespace qcurve::cli
