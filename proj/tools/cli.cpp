#include "cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "csv_io.hpp"
#include "json.hpp"
#include "qcurve/errors.hpp"
#include "qcurve/evolve.hpp"
#include "spec_error.hpp"
#include "spec_file.hpp"
#include "verify.hpp"

namespace qcurve::cli {

namespace {

struct Options {
    std::string spec;
    std::string output;
    std::string picture = "cartesian";
    std::string method;
    double lambda0 = 0.0;
    bool reparametrize = false;
};

CurveSamples prepared(const CurveSpec& spec, bool reparametrize) {
    return reparametrize ? reparametrize_by_arc_length(spec.curve) : spec.curve;
}

int cmd_sample(const Options& o, std::ostream&) {
    const CurveSpec spec = load_spec(o.spec);
    std::ostringstream os;
    write_curve_csv(os, spec.curve);
    write_file(o.output, os.str());
    return kSuccess;
}

int cmd_curvature(const Options& o, std::ostream& err) {
    const CurveSpec spec = load_spec(o.spec);
    std::ostringstream os;
    if (o.picture == "cartesian") {
        write_profile_csv(os, curvature_cartesian(spec.curve));
    } else {
        const auto p = curvature_symplectic(spec.curve);
        const std::size_t m = interior_margin(p.size());
        double worst = 0.0;
        for (std::size_t i = m; i + m < p.size(); ++i) worst = std::max(worst, p.residual[i]);
        if (worst > 0.1) {
            err << "qcurve: warning: symplectic residual reaches " << format_double(worst)
                << "; the normal acceleration leaves q' span{j, k}, so c does not describe this curve\n";
        }
        write_profile_csv(os, p);
    }
    write_file(o.output, os.str());
    return kSuccess;
}

int cmd_evolute(const Options& o, std::ostream&) {
    const CurveSpec spec = load_spec(o.spec);
    const CurveSamples c = prepared(spec, o.reparametrize);
    const EvoluteResult e = o.picture == "cartesian" ? evolute(c) : evolute_symplectic(c);
    std::ostringstream os;
    write_curve_csv(os, e.curve);
    nlohmann::ordered_json side;
    side["spec"] = spec.source;
    side["picture"] = o.picture;
    side["reparametrized"] = o.reparametrize;
    side["nodes"] = c.size();
    side["evolute_nodes"] = e.curve.size();
    side["singular_threshold"] = EvolveOptions{}.singular_threshold;
    side["singular_nodes"] = e.singular_nodes;
    write_file(o.output, os.str());
    write_file(o.output + ".report.json", side.dump(2) + "\n");
    return kSuccess;
}

int cmd_evolvent(const Options& o, std::ostream&) {
    const CurveSpec spec = load_spec(o.spec);
    std::ostringstream os;
    write_curve_csv(os, evolvent(prepared(spec, o.reparametrize), o.lambda0));
    write_file(o.output, os.str());
    return kSuccess;
}

int cmd_reconstruct(const Options& o, std::ostream&) {
    const CurveSpec spec = load_spec(o.spec);
    CurveSamples out;
    if (spec.kind == SpecKind::CurvatureProfile) {
        if (o.method != "ode") {
            throw SpecError(spec.source, 0, "curvature-profile specs support only --method ode");
        }
        out = spec.curve;
    } else if (!spec.reconstruction) {
        throw SpecError(spec.source, 0,
                        "reconstruct needs a 'reconstruction' or 'curvature-profile' spec, got '" +
                            to_string(spec.kind) + "'");
    } else {
        const ReconstructionSpec& rs = *spec.reconstruction;
        if (o.method == "closed") {
            out = spec.curve;
        } else if (o.method == "ode") {
            out = reconstruct_ode(profile_from_spec(rs), rs.P0, rs.V0);
        } else {
            // |c| = kappa_mag; the symplectic parts of P0 give the two constants
            const SymplecticForm p = to_symplectic(rs.P0);
            out = reconstruct_symplectic(rs.t, rs.kappa_mag, rs.phi0, p.z0, p.z1);
        }
    }
    std::ostringstream os;
    write_curve_csv(os, out);
    write_file(o.output, os.str());
    return kSuccess;
}

int cmd_verify(const Options& o, std::ostream& err) {
    const CurveSpec spec = load_spec(o.spec);
    const auto checks = verify_curve(spec);
    write_file(o.output, report_json(spec, checks));
    for (const Check& c : checks) {
        if (c.failed()) {
            err << "qcurve: check failed: " << c.name << " (measured " << format_double(c.measured)
                << ", tolerance " << format_double(c.tolerance) << ")\n";
        }
    }
    return all_passed(checks) ? kSuccess : kCheckFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Differential geometry of sampled quaternionic curves", "qcurve"};
    app.require_subcommand(1);
    Options o;
    int (*command)(const Options&, std::ostream&) = nullptr;

    auto positional = [&o](CLI::App* sub, const char* output_help) {
        sub->add_option("spec", o.spec, "JSON curve spec")->required()->check(CLI::ExistingFile);
        sub->add_option("output", o.output, output_help)->required();
    };

    auto* sample = app.add_subcommand("sample", "Write the spec's curve samples as CSV");
    positional(sample, "output CSV (t,x0,x1,x2,x3)");
    sample->callback([&] { command = cmd_sample; });

    auto* curvature = app.add_subcommand("curvature", "Write the curvature profile as CSV");
    positional(curvature, "output CSV");
    curvature->add_option("--picture", o.picture, "cartesian or symplectic")
        ->check(CLI::IsMember({"cartesian", "symplectic"}));
    curvature->callback([&] { command = cmd_curvature; });

    auto* evo = app.add_subcommand("evolute", "Write the evolute (centres of curvature) as CSV");
    positional(evo, "output CSV; singular nodes go to <output>.report.json");
    evo->add_option("--picture", o.picture, "cartesian or symplectic")
        ->check(CLI::IsMember({"cartesian", "symplectic"}));
    evo->add_flag("--reparametrize", o.reparametrize, "reparametrize by arc length first");
    evo->callback([&] { command = cmd_evolute; });

    auto* inv = app.add_subcommand("evolvent", "Write the evolvent (involute) as CSV");
    positional(inv, "output CSV");
    inv->add_option("--lambda0", o.lambda0, "arc-length offset of the unwinding string")->required();
    inv->add_flag("--reparametrize", o.reparametrize, "reparametrize by arc length first");
    inv->callback([&] { command = cmd_evolvent; });

    auto* rec = app.add_subcommand("reconstruct", "Rebuild a curve from curvature data");
    positional(rec, "output CSV");
    rec->add_option("--method", o.method, "closed, ode or symplectic")
        ->required()
        ->check(CLI::IsMember({"closed", "ode", "symplectic"}));
    rec->callback([&] { command = cmd_reconstruct; });

    auto* ver = app.add_subcommand("verify", "Run the invariant checks and write a JSON report");
    positional(ver, "output report (JSON)");
    ver->callback([&] { command = cmd_verify; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        return command(o, err);
    } catch (const SpecError& e) {
        err << "qcurve: error: " << e.what() << '\n';
    } catch (const IrregularCurve& e) {
        err << "qcurve: error: " << o.spec << ": " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "qcurve: error: " << o.spec << ": " << e.what() << '\n';
    } catch (const InvalidInput& e) {
        err << "qcurve: error: " << o.spec << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "qcurve: error: " << e.what() << '\n';
    }
    return kInputError;
}

}  // namespace qcurve::cli
