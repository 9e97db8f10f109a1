#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <unistd.h>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "csv_io.hpp"
#include "doctest.h"
#include "json.hpp"
#include "spec_error.hpp"
#include "spec_file.hpp"

namespace fs = std::filesystem;
using namespace qcurve;
using nlohmann::json;

namespace {

const fs::path data_dir = QCURVE_DATA_DIR;

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = fs::temp_directory_path() / ("qcurve-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    fs::path operator/(const std::string& name) const { return path_ / name; }

    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(path_ / name) << text;
        return path_ / name;
    }

private:
    fs::path path_;
};

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

cli::CsvTable table(const fs::path& p) { return cli::read_csv(p); }

double max_abs(const std::vector<double>& v, std::size_t margin = 0) {
    double m = 0.0;
    for (std::size_t i = margin; i + margin < v.size(); ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

}  // namespace

TEST_CASE("format_double") {
    CHECK(cli::format_double(1.0) == "1");
    CHECK(cli::format_double(0.1) == "0.10000000000000001");
    CHECK(cli::format_double(-2.5e-20) == "-2.4999999999999999e-20");
    CHECK(std::stod(cli::format_double(M_PI)) == M_PI);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::kInputError);
    CHECK(run({"nonsense"}).code == cli::kInputError);
    CHECK(run({"--help"}).code == cli::kSuccess);
    CHECK(run({"sample", "/does/not/exist.json", "out.csv"}).code == cli::kInputError);
}

TEST_CASE("sample") {
    TempDir dir;
    SUBCASE("builtin circle") {
        const auto out = dir / "circle.csv";
        REQUIRE(run({"sample", (data_dir / "circle.json").string(), out.string()}).code == cli::kSuccess);
        const auto text = slurp(out);
        CHECK(text.rfind("t,x0,x1,x2,x3\n", 0) == 0);
        const auto t = table(out);
        REQUIRE(t.column("t").size() == 1001);
        CHECK(t.column("t")[0] == 0.0);
        CHECK(t.column("x0")[0] == 1.0);
        CHECK(t.column("x1")[250] == doctest::Approx(1.0));
    }
    SUBCASE("non-monotone grid") {
        const auto spec = dir.write("bad.json", R"({
  "kind": "samples",
  "t":  [0, 1, 2, 1.5, 4],
  "x0": [0, 1, 2, 3, 4],
  "x1": [0, 0, 0, 0, 0],
  "x2": [0, 0, 0, 0, 0],
  "x3": [0, 0, 0, 0, 0]
})");
        const auto r = run({"sample", spec.string(), (dir / "o.csv").string()});
        CHECK(r.code == cli::kInputError);
        CHECK(r.err.find("bad.json:3:") != std::string::npos);
        CHECK_FALSE(fs::exists(dir / "o.csv"));
    }
    SUBCASE("samples pass through unchanged") {
        const auto out = dir / "line.csv";
        REQUIRE(run({"sample", (data_dir / "line.json").string(), out.string()}).code == cli::kSuccess);
        const auto in = json::parse(slurp(data_dir / "line.json"));
        const auto t = table(out);
        for (const char* col : {"t", "x0", "x1", "x2", "x3"}) CHECK(t.column(col) == in[col].get<std::vector<double>>());
    }
    SUBCASE("samples from CSV") {
        dir.write("pts.csv", "t,x0,x1,x2,x3\n0,0,0,0,0\n1,1,0,0,0\n2,2,0,0,0\n3,3,0,0,0\n4,4,0,0,0\n");
        const auto spec = dir.write("csv.json", R"({"kind": "samples", "csv": "pts.csv"})");
        REQUIRE(run({"sample", spec.string(), (dir / "o.csv").string()}).code == cli::kSuccess);
        CHECK(table(dir / "o.csv").column("x0") == std::vector<double>{0, 1, 2, 3, 4});
    }
    SUBCASE("malformed CSV is reported with its line") {
        dir.write("pts.csv", "t,x0,x1,x2,x3\n0,0,0,0,0\n1,1,zero,0,0\n");
        const auto spec = dir.write("csv.json", R"({"kind": "samples", "csv": "pts.csv"})");
        const auto r = run({"sample", spec.string(), (dir / "o.csv").string()});
        CHECK(r.code == cli::kInputError);
        CHECK(r.err.find("pts.csv:3:") != std::string::npos);
    }
}

TEST_CASE("spec schema errors") {
    TempDir dir;
    auto code_and_err = [&](const std::string& text) {
        const auto spec = dir.write("s.json", text);
        return run({"sample", spec.string(), (dir / "o.csv").string()});
    };
    auto r = code_and_err("{\n  \"kind\": \"builtin-polar\",\n  \"kappa\": [1, 0, 0],\n  \"colour\": 3,\n  \"grid\": {\"start\": 0, \"stop\": 1, \"nodes\": 11}\n}");
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("s.json:4:") != std::string::npos);
    CHECK(r.err.find("colour") != std::string::npos);

    r = code_and_err("{\n  \"kind\": \"spline\"\n}");
    CHECK(r.code == cli::kInputError);

    r = code_and_err("{\n  \"kind\": \"builtin-polar\",\n  \"kappa\": [1, 0, 0],\n  \"grid\": {\"start\": 0, \"stop\": 1, \"nodes\": 3}\n}");
    CHECK(r.code == cli::kInputError);

    r = code_and_err("{\n  \"kind\": \"samples\",\n  \"t\": [0, 1,\n}");
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("s.json:") != std::string::npos);

    r = code_and_err(R"({"kind": "builtin-polar", "kappa": [0, 0, 0], "grid": {"start": 0, "stop": 1, "nodes": 11}})");
    CHECK(r.code == cli::kInputError);
}

TEST_CASE("curvature") {
    TempDir dir;
    SUBCASE("circle") {
        const auto out = dir / "k.csv";
        REQUIRE(run({"curvature", (data_dir / "circle.json").string(), out.string()}).code == cli::kSuccess);
        CHECK(slurp(out).rfind("t,k1,k2,k3,kmag,residual\n", 0) == 0);
        const auto t = table(out);
        const auto& k1 = t.column("k1");
        for (std::size_t i = 20; i + 20 < k1.size(); ++i) CHECK(k1[i] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(max_abs(t.column("k2"), 20) < 1e-6);
    }
    SUBCASE("line") {
        const auto out = dir / "k.csv";
        REQUIRE(run({"curvature", (data_dir / "line.json").string(), out.string()}).code == cli::kSuccess);
        const auto t = table(out);
        for (const char* col : {"k1", "k2", "k3", "kmag"}) CHECK(max_abs(t.column(col)) < 1e-9);
    }
    SUBCASE("symplectic picture") {
        const auto out = dir / "c.csv";
        auto r = run({"curvature", "--picture", "symplectic", (data_dir / "helix_symplectic.json").string(), out.string()});
        REQUIRE(r.code == cli::kSuccess);
        CHECK(r.err.empty());
        CHECK(slurp(out).rfind("t,re_c,im_c,residual\n", 0) == 0);
        CHECK(table(out).column("re_c")[500] == doctest::Approx(1.0).epsilon(1e-6));

        r = run({"curvature", "--picture", "symplectic", (data_dir / "circle.json").string(), out.string()});
        CHECK(r.code == cli::kSuccess);
        CHECK(r.err.find("warning") != std::string::npos);
        CHECK(max_abs(table(out).column("residual"), 20) > 0.1);
    }
    SUBCASE("unknown picture") {
        CHECK(run({"curvature", "--picture", "polar", (data_dir / "circle.json").string(), (dir / "x.csv").string()}).code ==
              cli::kInputError);
    }
}

TEST_CASE("evolute and evolvent") {
    TempDir dir;
    SUBCASE("circle evolute is the origin") {
        const auto out = dir / "e.csv";
        REQUIRE(run({"evolute", (data_dir / "circle.json").string(), out.string()}).code == cli::kSuccess);
        const auto t = table(out);
        for (const char* col : {"x0", "x1", "x2", "x3"}) CHECK(max_abs(t.column(col), 20) < 1e-5);
        const auto report = json::parse(slurp(dir / "e.csv.report.json"));
        CHECK(report["singular_nodes"].empty());
    }
    SUBCASE("singular nodes go to the sidecar report") {
        // curvature k1 = 0.5 sin t vanishes at t = pi
        std::ostringstream spec;
        spec << R"({"kind": "curvature-profile", "grid": {"start": 0, "stop": )" << cli::format_double(2 * M_PI)
             << R"(, "nodes": 1001}, "k1": [)";
        for (int i = 0; i < 1001; ++i) spec << (i ? ", " : "") << cli::format_double(0.5 * std::sin(2 * M_PI * i / 1000.0));
        spec << "], \"k2\": [";
        for (int i = 0; i < 1001; ++i) spec << (i ? ", 0" : "0");
        spec << "], \"k3\": [";
        for (int i = 0; i < 1001; ++i) spec << (i ? ", 0" : "0");
        spec << "]}";
        const auto path = dir.write("inflect.json", spec.str());
        REQUIRE(run({"evolute", path.string(), (dir / "e.csv").string()}).code == cli::kSuccess);
        const auto report = json::parse(slurp(dir / "e.csv.report.json"));
        REQUIRE_FALSE(report["singular_nodes"].empty());
        bool at_pi = false;
        for (double t : report["singular_nodes"]) at_pi = at_pi || std::abs(t - M_PI) < 1e-9;
        CHECK(at_pi);
        CHECK(table(dir / "e.csv").column("t").size() + report["singular_nodes"].size() == 1001);
    }
    SUBCASE("line has no evolute") {
        CHECK(run({"evolute", (data_dir / "line.json").string(), (dir / "e.csv").string()}).code == cli::kInputError);
    }
    SUBCASE("evolvent needs lambda0") {
        const auto r = run({"evolvent", (data_dir / "circle.json").string(), (dir / "i.csv").string()});
        CHECK(r.code == cli::kInputError);
        CHECK(r.err.find("lambda0") != std::string::npos);
        REQUIRE(run({"evolvent", "--lambda0", "0", (data_dir / "circle.json").string(), (dir / "i.csv").string()}).code == cli::kSuccess);
        const auto t = table(dir / "i.csv");
        // |q_I - q| = t on the unit circle
        const double x0 = t.column("x0")[500], x1 = t.column("x1")[500], s = t.column("t")[500];
        CHECK(std::hypot(x0 - std::cos(s), x1 - std::sin(s)) == doctest::Approx(s).epsilon(1e-8));
    }
    SUBCASE("non-unit speed needs --reparametrize") {
        const auto ellipse = dir.write("ellipse.json", [] {
            std::ostringstream s;
            s << R"({"kind": "samples", "t": [)";
            for (int i = 0; i <= 400; ++i) s << (i ? ", " : "") << cli::format_double(2 * M_PI * i / 400.0);
            for (const char* c : {"x0", "x1", "x2", "x3"}) {
                s << "], \"" << c << "\": [";
                for (int i = 0; i <= 400; ++i) {
                    const double t = 2 * M_PI * i / 400.0;
                    const double v = c[1] == '0' ? 2 * std::cos(t) : c[1] == '1' ? std::sin(t) : 0.0;
                    s << (i ? ", " : "") << cli::format_double(v);
                }
            }
            s << "]}";
            return s.str();
        }());
        CHECK(run({"evolute", ellipse.string(), (dir / "e.csv").string()}).code == cli::kInputError);
        CHECK(run({"evolute", "--reparametrize", ellipse.string(), (dir / "e.csv").string()}).code == cli::kSuccess);
    }
}

TEST_CASE("reconstruct") {
    TempDir dir;
    auto spec_text = [](const std::string& kappa, const std::string& extra) {
        return R"({"kind": "reconstruction", "grid": {"start": 0, "stop": 6.283185307179586, "nodes": 6284},
  "kappa_mag": )" + kappa + R"(, "omega": [0, 1, 0], "phi0": 0.5)" + extra + "}";
    };
    SUBCASE("closed form and RK4 agree for constant |kappa|") {
        const auto spec = dir.write("r.json", spec_text("1.25", ""));
        REQUIRE(run({"reconstruct", "--method", "closed", spec.string(), (dir / "a.csv").string()}).code == cli::kSuccess);
        REQUIRE(run({"reconstruct", "--method", "ode", spec.string(), (dir / "b.csv").string()}).code == cli::kSuccess);
        const auto a = table(dir / "a.csv"), b = table(dir / "b.csv");
        double worst = 0.0;
        for (const char* c : {"x0", "x1", "x2", "x3"}) {
            for (std::size_t i = 0; i < a.column(c).size(); ++i) worst = std::max(worst, std::abs(a.column(c)[i] - b.column(c)[i]));
        }
        CHECK(worst < 1e-6);
    }
    SUBCASE("zero curvature gives a line") {
        const auto spec = dir.write("r.json", spec_text("0", R"(, "P0": [1, 0, 0, 0], "V0": [0, 0, 0, 1])"));
        REQUIRE(run({"reconstruct", "--method", "closed", spec.string(), (dir / "a.csv").string()}).code == cli::kSuccess);
        const auto a = table(dir / "a.csv");
        for (std::size_t i = 0; i < a.column("t").size(); i += 500) {
            CHECK(a.column("x0")[i] == doctest::Approx(1.0));
            CHECK(a.column("x3")[i] == doctest::Approx(a.column("t")[i]));
        }
    }
    SUBCASE("non-unit V0") {
        const auto spec = dir.write("r.json", spec_text("1", R"(, "V0": [1, 1, 0, 0])"));
        const auto r = run({"reconstruct", "--method", "ode", spec.string(), (dir / "a.csv").string()});
        CHECK(r.code == cli::kInputError);
        CHECK(r.err.find("V0") != std::string::npos);
    }
    SUBCASE("method is required and checked") {
        const auto spec = dir.write("r.json", spec_text("1", ""));
        CHECK(run({"reconstruct", spec.string(), (dir / "a.csv").string()}).code == cli::kInputError);
        CHECK(run({"reconstruct", "--method", "euler", spec.string(), (dir / "a.csv").string()}).code == cli::kInputError);
    }
    SUBCASE("symplectic method") {
        const auto spec = dir.write("r.json", spec_text("1", ""));
        REQUIRE(run({"reconstruct", "--method", "symplectic", spec.string(), (dir / "s.csv").string()}).code == cli::kSuccess);
        const auto s = dir.write("s.json", R"({"kind": "samples", "csv": "s.csv"})");
        REQUIRE(run({"curvature", "--picture", "symplectic", s.string(), (dir / "c.csv").string()}).code == cli::kSuccess);
        const auto c = table(dir / "c.csv");
        // c = |c| e^{i(phi0 + pi/2)}
        CHECK(c.column("re_c")[3000] == doctest::Approx(std::cos(0.5 + M_PI / 2)).epsilon(1e-4));
        CHECK(c.column("im_c")[3000] == doctest::Approx(std::sin(0.5 + M_PI / 2)).epsilon(1e-4));
    }
}

TEST_CASE("verify") {
    TempDir dir;
    SUBCASE("circle: every check passes or is untestable, and the evolute collapses") {
        const auto out = dir / "report.json";
        const auto r = run({"verify", (data_dir / "circle.json").string(), out.string()});
        CHECK(r.code == cli::kSuccess);
        const auto report = json::parse(slurp(out));
        CHECK(report["ok"] == true);
        std::set<std::string> names;
        for (const auto& c : report["checks"]) {
            CHECK(c["status"] != "fail");
            CHECK(names.insert(c["name"].get<std::string>()).second);
        }
        CHECK(names.count("quaternion_orthogonality") == 1);
        CHECK(names.count("frenet_residual") == 1);
        CHECK(names.count("evolute_of_evolvent_roundtrip") == 1);
    }
    SUBCASE("line: evolute checks are untestable, the rest pass") {
        const auto out = dir / "report.json";
        CHECK(run({"verify", (data_dir / "line.json").string(), out.string()}).code == cli::kSuccess);
        const auto report = json::parse(slurp(out));
        int untestable = 0;
        for (const auto& c : report["checks"]) {
            const std::string name = c["name"];
            if (name.rfind("evolute", 0) == 0) {
                CHECK_MESSAGE(c["status"] == "untestable", name);
                ++untestable;
            } else if (c["status"] != "untestable") {
                CHECK_MESSAGE(c["status"] == "pass", name);
            }
        }
        CHECK(untestable >= 3);
    }
    SUBCASE("corrupted spec") {
        auto text = slurp(data_dir / "line.json");
        text.replace(text.find("\"x3\""), 4, "\"x3\": [0], \"x9\"");
        const auto spec = dir.write("corrupt.json", text);
        CHECK(run({"verify", spec.string(), (dir / "r.json").string()}).code == cli::kInputError);
    }
    SUBCASE("outputs are byte-identical across runs") {
        for (const char* name : {"circle.json", "varying_curvature.json"}) {
            const auto spec = (data_dir / name).string();
            REQUIRE(run({"verify", spec, (dir / "a.json").string()}).code == cli::kSuccess);
            REQUIRE(run({"verify", spec, (dir / "b.json").string()}).code == cli::kSuccess);
            CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
            REQUIRE(run({"curvature", spec, (dir / "a.csv").string()}).code == cli::kSuccess);
            REQUIRE(run({"curvature", spec, (dir / "b.csv").string()}).code == cli::kSuccess);
            CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
        }
    }
}

TEST_CASE("spec loader") {
    const auto spec = cli::load_spec(data_dir / "varying_curvature.json");
    CHECK(spec.kind == cli::SpecKind::Reconstruction);
    REQUIRE(spec.reconstruction.has_value());
    CHECK(spec.curve.size() == 2001);
    CHECK(spec.reconstruction->omega == Quaternion::j());
    CHECK(cli::to_string(spec.kind) == "reconstruction");
    CHECK_THROWS_AS(cli::parse_spec("{\"kind\": 3}", "x.json"), cli::SpecError);
}
