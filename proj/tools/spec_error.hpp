#pragma once

#include <stdexcept>
#include <string>

namespace qcurve::cli {

/// Input problem located in a file: "file:line: message" (line 0 = whole file).
class SpecError : public std::runtime_error {
public:
    SpecError(const std::string& file, std::size_t line, const std::string& message)
        : std::runtime_error(file + (line ? ":" + std::to_string(line) : std::string()) + ": " + message) {}
};

}  // namespace qcurve::cli
