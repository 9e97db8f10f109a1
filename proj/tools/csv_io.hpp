#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcurve/curve.hpp"
#include "qcurve/frenet.hpp"

namespace qcurve::cli {

/// Shortest text of x with 17 significant digits, independent of the locale.
std::string format_double(double x);

void write_curve_csv(std::ostream& os, const CurveSamples& c);
void write_profile_csv(std::ostream& os, const CurvatureProfile& p);
void write_profile_csv(std::ostream& os, const SymplecticCurvatureProfile& p);

/// A numeric table read from CSV with a one-line header.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    /// Column by header name; throws SpecError naming the file when absent.
    const std::vector<double>& column(const std::string& name) const;
    std::string source;
};

/// Parses a CSV file; malformed rows are reported as "file:line: ...".
CsvTable read_csv(const std::filesystem::path& path);

/// Replaces the file at path; commands render the full output before calling this.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace qcurve::cli
