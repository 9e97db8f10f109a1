#include "spec_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string_view>

#include "json.hpp"

#include "csv_io.hpp"
#include "qcurve/errors.hpp"
#include "spec_error.hpp"

namespace qcurve::cli {

using nlohmann::json;

std::string to_string(SpecKind kind) {
    switch (kind) {
        case SpecKind::Samples: return "samples";
        case SpecKind::BuiltinPolar: return "builtin-polar";
        case SpecKind::BuiltinSymplectic: return "builtin-symplectic";
        case SpecKind::Reconstruction: return "reconstruction";
        case SpecKind::CurvatureProfile: return "curvature-profile";
    }
    return "unknown";
}

namespace {

using Path = std::initializer_list<std::string_view>;

class Reader {
public:
    Reader(const std::string& text, std::filesystem::path name)
        : text_(text), name_(std::move(name)) {}

    const std::string& source() const { return source_; }
    std::filesystem::path resolve(const std::string& rel) const {
        const std::filesystem::path p(rel);
        return p.is_absolute() ? p : name_.parent_path() / p;
    }

    // Line of the last key in `keys`, each searched after the previous one.
    std::size_t line_of(Path keys) const {
        std::size_t pos = 0;
        std::size_t found = std::string::npos;
        for (std::string_view k : keys) {
            const std::string quoted = "\"" + std::string(k) + "\"";
            const auto p = text_.find(quoted, pos);
            if (p == std::string::npos) break;
            found = pos = p;
        }
        if (found == std::string::npos) return 0;
        return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + found, '\n'));
    }

    [[noreturn]] void fail(Path keys, const std::string& message) const {
        throw SpecError(source_, line_of(keys), message);
    }

private:
    const std::string& text_;
    std::filesystem::path name_;
    std::string source_ = name_.string();
};

std::string field_name(Path keys) {
    std::string out;
    for (std::string_view k : keys) {
        if (!out.empty()) out += '.';
        out += k;
    }
    return out;
}

const json* find(const json& obj, std::string_view key) {
    const auto it = obj.find(std::string(key));
    return it == obj.end() ? nullptr : &*it;
}

double number(const Reader& r, const json& v, Path keys) {
    if (!v.is_number()) r.fail(keys, "field '" + field_name(keys) + "' must be a number");
    return v.get<double>();
}

double number_or(const Reader& r, const json& obj, Path keys, double fallback) {
    const json* v = find(obj, *(keys.end() - 1));
    return v ? number(r, *v, keys) : fallback;
}

std::vector<double> numbers(const Reader& r, const json& v, Path keys) {
    if (!v.is_array()) r.fail(keys, "field '" + field_name(keys) + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            r.fail(keys, "field '" + field_name(keys) + "' entry " + std::to_string(i) + " is not a number");
        }
        out.push_back(v[i].get<double>());
    }
    return out;
}

const json& required(const Reader& r, const json& obj, Path keys) {
    const json* v = find(obj, *(keys.end() - 1));
    if (!v) r.fail({}, "missing required field '" + field_name(keys) + "'");
    return *v;
}

std::vector<double> fixed(const Reader& r, const json& v, Path keys, std::size_t n) {
    auto out = numbers(r, v, keys);
    if (out.size() != n) {
        r.fail(keys, "field '" + field_name(keys) + "' needs exactly " + std::to_string(n) + " numbers");
    }
    return out;
}

Quaternion quaternion_or(const Reader& r, const json& obj, Path keys, Quaternion fallback) {
    const json* v = find(obj, *(keys.end() - 1));
    if (!v) return fallback;
    const auto x = fixed(r, *v, keys, 4);
    return {x[0], x[1], x[2], x[3]};
}

Quaternion imaginary(const Reader& r, const json& v, Path keys) {
    const auto x = fixed(r, v, keys, 3);
    return {0.0, x[0], x[1], x[2]};
}

void check_keys(const Reader& r, const json& obj, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) r.fail({key}, "unknown field '" + key + "'");
    }
}

void check_grid(const Reader& r, const std::vector<double>& t, Path keys) {
    if (t.size() < kMinCurveNodes) {
        r.fail(keys, "at least " + std::to_string(kMinCurveNodes) + " nodes required, got " +
                         std::to_string(t.size()));
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) {
            r.fail(keys, "grid must be strictly increasing (entry " + std::to_string(i) + ")");
        }
    }
}

// Either an explicit "t" array or "grid": {start, stop, nodes}.
std::vector<double> read_grid(const Reader& r, const json& obj) {
    const json* t = find(obj, "t");
    const json* g = find(obj, "grid");
    if (t && g) r.fail({"grid"}, "give either 't' or 'grid', not both");
    if (!t && !g) r.fail({}, "missing grid: give 't' (array) or 'grid' {start, stop, nodes}");
    std::vector<double> out;
    if (t) {
        out = numbers(r, *t, {"t"});
        check_grid(r, out, {"t"});
        return out;
    }
    if (!g->is_object()) r.fail({"grid"}, "field 'grid' must be an object {start, stop, nodes}");
    check_keys(r, *g, {"start", "stop", "nodes"});
    const double a = number(r, required(r, *g, {"grid", "start"}), {"grid", "start"});
    const double b = number(r, required(r, *g, {"grid", "stop"}), {"grid", "stop"});
    const json& nj = required(r, *g, {"grid", "nodes"});
    if (!nj.is_number_integer() || nj.get<long long>() < static_cast<long long>(kMinCurveNodes)) {
        r.fail({"grid", "nodes"}, "field 'grid.nodes' must be an integer >= " + std::to_string(kMinCurveNodes));
    }
    if (!(b > a)) r.fail({"grid", "stop"}, "grid.stop must exceed grid.start");
    return numerics::uniform_grid(a, b, nj.get<std::size_t>());
}

void require_unit(const Reader& r, const Quaternion& q, Path keys) {
    if (std::abs(norm(q) - 1.0) > 1e-9) {
        std::ostringstream os;
        os.precision(17);
        os << "field '" << field_name(keys) << "' must have norm 1 (got " << norm(q) << ")";
        r.fail(keys, os.str());
    }
}

CurveSamples read_samples(const Reader& r, const json& obj) {
    CurveSamples c;
    std::vector<double> x[4];
    static const char* names[4] = {"x0", "x1", "x2", "x3"};
    if (const json* csv = find(obj, "csv")) {
        check_keys(r, obj, {"kind", "name", "csv"});
        if (!csv->is_string()) r.fail({"csv"}, "field 'csv' must be a file path");
        const CsvTable table = read_csv(r.resolve(csv->get<std::string>()));
        c.t = table.column("t");
        for (int k = 0; k < 4; ++k) x[k] = table.column(names[k]);
    } else {
        check_keys(r, obj, {"kind", "name", "t", "x0", "x1", "x2", "x3"});
        c.t = numbers(r, required(r, obj, {"t"}), {"t"});
        for (int k = 0; k < 4; ++k) x[k] = numbers(r, required(r, obj, {names[k]}), {names[k]});
    }
    for (int k = 0; k < 4; ++k) {
        if (x[k].size() != c.t.size()) {
            r.fail({names[k]}, std::string("column '") + names[k] + "' has " + std::to_string(x[k].size()) +
                                   " entries but 't' has " + std::to_string(c.t.size()));
        }
    }
    check_grid(r, c.t, {"t"});
    c.q.resize(c.t.size());
    for (std::size_t i = 0; i < c.t.size(); ++i) c.q[i] = {x[0][i], x[1][i], x[2][i], x[3][i]};
    c.meta = "ingested";
    return c;
}

std::vector<double> read_kappa_mag(const Reader& r, const json& obj, std::size_t n) {
    const json& v = required(r, obj, {"kappa_mag"});
    std::vector<double> out;
    if (v.is_number()) {
        out.assign(n, v.get<double>());
    } else {
        out = numbers(r, v, {"kappa_mag"});
        if (out.size() != n) {
            r.fail({"kappa_mag"}, "field 'kappa_mag' has " + std::to_string(out.size()) +
                                      " entries but the grid has " + std::to_string(n));
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(out[i] >= 0.0)) r.fail({"kappa_mag"}, "kappa_mag must be nonnegative (entry " + std::to_string(i) + ")");
    }
    return out;
}

}  // namespace

CurveSpec parse_spec(const std::string& text, const std::filesystem::path& name) {
    const Reader r(text, name);
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte > 0 ? byte - 1 : 0), '\n');
        throw SpecError(r.source(), static_cast<std::size_t>(line), std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw SpecError(r.source(), 1, "spec must be a JSON object");
    const json& kind = required(r, root, {"kind"});
    if (!kind.is_string()) r.fail({"kind"}, "field 'kind' must be a string");
    const std::string k = kind.get<std::string>();

    CurveSpec spec;
    spec.source = r.source();
    if (const json* nm = find(root, "name"); nm && !nm->is_string()) r.fail({"name"}, "field 'name' must be a string");

    if (k == "samples") {
        spec.kind = SpecKind::Samples;
        spec.curve = read_samples(r, root);
    } else if (k == "builtin-polar") {
        spec.kind = SpecKind::BuiltinPolar;
        check_keys(r, root, {"kind", "name", "kappa", "phi0", "grid", "t"});
        const Quaternion kappa = imaginary(r, required(r, root, {"kappa"}), {"kappa"});
        if (norm(kappa) == 0.0) r.fail({"kappa"}, "kappa must be nonzero");
        const double phi0 = number_or(r, root, {"phi0"}, 0.0);
        spec.curve = builtin_constant_curvature(kappa, phi0, read_grid(r, root));
    } else if (k == "builtin-symplectic") {
        spec.kind = SpecKind::BuiltinSymplectic;
        check_keys(r, root, {"kind", "name", "c", "phi0", "grid", "t"});
        const auto c = fixed(r, required(r, root, {"c"}), {"c"}, 2);
        if (c[0] == 0.0 && c[1] == 0.0) r.fail({"c"}, "c must be nonzero");
        const double phi0 = number_or(r, root, {"phi0"}, 0.0);
        spec.curve = builtin_symplectic({c[0], c[1]}, phi0, read_grid(r, root));
    } else if (k == "reconstruction") {
        spec.kind = SpecKind::Reconstruction;
        check_keys(r, root, {"kind", "name", "kappa_mag", "omega", "phi0", "P0", "V0", "grid", "t"});
        ReconstructionSpec rs;
        rs.t = read_grid(r, root);
        rs.kappa_mag = read_kappa_mag(r, root, rs.t.size());
        if (const json* w = find(root, "omega")) rs.omega = imaginary(r, *w, {"omega"});
        require_unit(r, rs.omega, {"omega"});
        rs.phi0 = number_or(r, root, {"phi0"}, 0.0);
        rs.P0 = quaternion_or(r, root, {"P0"}, Quaternion(0.0));
        rs.V0 = quaternion_or(r, root, {"V0"}, Quaternion(1.0));
        require_unit(r, rs.V0, {"V0"});
        spec.P0 = rs.P0;
        spec.V0 = rs.V0;
        spec.curve = reconstruct_closed_form(rs);
        spec.reconstruction = std::move(rs);
    } else if (k == "curvature-profile") {
        spec.kind = SpecKind::CurvatureProfile;
        qcurve::CurvatureProfile p;
        std::vector<double> t, k1, k2, k3;
        if (const json* csv = find(root, "csv")) {
            check_keys(r, root, {"kind", "name", "csv", "P0", "V0", "anchor"});
            if (!csv->is_string()) r.fail({"csv"}, "field 'csv' must be a file path");
            const CsvTable table = read_csv(r.resolve(csv->get<std::string>()));
            t = table.column("t");
            k1 = table.column("k1");
            k2 = table.column("k2");
            k3 = table.column("k3");
            check_grid(r, t, {"csv"});
        } else {
            check_keys(r, root, {"kind", "name", "k1", "k2", "k3", "P0", "V0", "anchor", "grid", "t"});
            t = read_grid(r, root);
            k1 = numbers(r, required(r, root, {"k1"}), {"k1"});
            k2 = numbers(r, required(r, root, {"k2"}), {"k2"});
            k3 = numbers(r, required(r, root, {"k3"}), {"k3"});
            for (const auto& [col, key] : {std::pair{&k1, "k1"}, {&k2, "k2"}, {&k3, "k3"}}) {
                if (col->size() != t.size()) {
                    r.fail({key}, std::string("field '") + key + "' length differs from the grid");
                }
            }
        }
        for (std::size_t i = 0; i < t.size(); ++i) p.push_back(t[i], {0.0, k1[i], k2[i], k3[i]});
        spec.P0 = quaternion_or(r, root, {"P0"}, Quaternion(0.0));
        spec.V0 = quaternion_or(r, root, {"V0"}, Quaternion(1.0));
        require_unit(r, spec.V0, {"V0"});
        if (const json* a = find(root, "anchor")) {
            if (!a->is_number_integer() || a->get<long long>() < 0 ||
                a->get<std::size_t>() >= t.size()) {
                r.fail({"anchor"}, "field 'anchor' must be a node index inside the grid");
            }
            spec.anchor = a->get<std::size_t>();
        }
        spec.curve = reconstruct_ode(p, spec.P0, spec.V0, spec.anchor);
        spec.profile = std::move(p);
    } else {
        r.fail({"kind"}, "unknown kind '" + k +
                             "' (expected samples, builtin-polar, builtin-symplectic, reconstruction, "
                             "curvature-profile)");
    }
    try {
        spec.curve.validate();
    } catch (const InvalidInput& e) {
        throw SpecError(r.source(), 0, e.what());
    }
    return spec;
}

CurveSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError(path.string(), 0, "cannot open spec file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str(), path);
}

}  // namespace qcurve::cli
