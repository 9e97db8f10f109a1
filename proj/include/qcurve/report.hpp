#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qcurve {

enum class CheckStatus { Pass, Fail, Untestable };

std::string_view to_string(CheckStatus s);

/// Outcome of one numerical verification.
struct Check {
    std::string name;
    CheckStatus status = CheckStatus::Untestable;
    double measured = 0.0;
    double tolerance = 0.0;
    std::vector<double> flagged;  ///< parameter values excluded or singular
    std::string note;

    bool passed() const { return status == CheckStatus::Pass; }
    bool failed() const { return status == CheckStatus::Fail; }

    /// Pass iff measured < tolerance (NaN fails).
    static Check measure(std::string name, double measured, double tolerance);
    /// Pass iff measured > bound (for lower limits such as a minimum speed).
    static Check exceed(std::string name, double measured, double bound);
    static Check untestable(std::string name, std::string note);
};

}  // namespace qcurve
