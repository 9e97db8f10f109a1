#pragma once

#include <stdexcept>
#include <string>

namespace qcurve {

/// Mathematically undefined request (zero quaternion inverse, polar form of 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed data: bad grids, mismatched lengths, out-of-range intervals.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A node where the tangent application vanishes.
class IrregularCurve : public DomainError {
public:
    IrregularCurve(double t, const std::string& what)
        : DomainError(what), t_(t) {}
    double where() const noexcept { return t_; }

private:
    double t_;
};

}  // namespace qcurve
