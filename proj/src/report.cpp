#include "qcurve/report.hpp"

#include <utility>

namespace qcurve {

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Untestable: return "untestable";
    }
    return "untestable";
}

Check Check::measure(std::string name, double measured, double tolerance) {
    Check c;
    c.name = std::move(name);
    c.measured = measured;
    c.tolerance = tolerance;
    c.status = measured < tolerance ? CheckStatus::Pass : CheckStatus::Fail;
    return c;
}

Check Check::exceed(std::string name, double measured, double bound) {
    Check c;
    c.name = std::move(name);
    c.measured = measured;
    c.tolerance = bound;
    c.status = measured > bound ? CheckStatus::Pass : CheckStatus::Fail;
    return c;
}

Check Check::untestable(std::string name, std::string note) {
    Check c;
    c.name = std::move(name);
    c.status = CheckStatus::Untestable;
    c.note = std::move(note);
    return c;
}

}  // namespace qcurve
