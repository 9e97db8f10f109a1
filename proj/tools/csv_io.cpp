#include "csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "spec_error.hpp"

namespace qcurve::cli {

std::string format_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

namespace {

void row(std::ostream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) os << ',';
        os << format_double(v);
        first = false;
    }
    os << '\n';
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

void write_curve_csv(std::ostream& os, const CurveSamples& c) {
    os << "t,x0,x1,x2,x3\n";
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Quaternion& q = c.q[i];
        row(os, {c.t[i], q.x0, q.x1, q.x2, q.x3});
    }
}

void write_profile_csv(std::ostream& os, const CurvatureProfile& p) {
    os << "t,k1,k2,k3,kmag,residual\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double res = i < p.residual.size() ? p.residual[i] : 0.0;
        row(os, {p.t[i], p.k1[i], p.k2[i], p.k3[i], p.kappa_mag[i], res});
    }
}

void write_profile_csv(std::ostream& os, const SymplecticCurvatureProfile& p) {
    os << "t,re_c,im_c,residual\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double res = i < p.residual.size() ? p.residual[i] : 0.0;
        row(os, {p.t[i], p.c[i].real(), p.c[i].imag(), res});
    }
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k] == name) return columns[k];
    }
    throw SpecError(source, 1, "missing column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    const std::string name = path.string();
    if (!in) throw SpecError(name, 0, "cannot open file");
    CsvTable table;
    table.source = name;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cells = split(line);
        if (table.header.empty()) {
            table.header = std::move(cells);
            table.columns.resize(table.header.size());
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw SpecError(name, lineno, "expected " + std::to_string(table.header.size()) +
                                              " fields, found " + std::to_string(cells.size()));
        }
        for (std::size_t k = 0; k < cells.size(); ++k) {
            double v = 0.0;
            const char* b = cells[k].data();
            const char* e = b + cells[k].size();
            const auto r = std::from_chars(b, e, v);
            if (r.ec != std::errc() || r.ptr != e) {
                throw SpecError(name, lineno, "field '" + table.header[k] + "' is not a number: '" +
                                                  cells[k] + "'");
            }
            table.columns[k].push_back(v);
        }
    }
    if (table.header.empty()) throw SpecError(name, 0, "empty CSV file");
    return table;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SpecError(path.string(), 0, "cannot open for writing");
    out << contents;
    if (!out.flush()) throw SpecError(path.string(), 0, "write failed");
}

}  // namespace qcurve::cli
