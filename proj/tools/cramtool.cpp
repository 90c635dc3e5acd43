// Command-line front end: emits CSV/JSON artifacts for the error-curve,
// equioscillation, round-trip, sensitivity, refit and matrix-exponential
// workflows.  All numeric output is decimal strings.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cram/errcurve.hpp"
#include "cram/matexp.hpp"
#include "cram/ratfun.hpp"
#include "cram/refit.hpp"
#include "cram/sensitivity.hpp"

using json = nlohmann::ordered_json;
using namespace cram;

namespace {

struct Common {
    int order = 14;
    int digits = 0;             // 0 = per-command default
    std::string coeffs_path;
    std::string residue_scale;  // optional rescale for legacy-convention files
};

CoefficientSet resolve_set(const Common& c, int default_digits) {
    int digits = c.digits > 0 ? c.digits : default_digits;
    CoefficientSet s;
    if (!c.coeffs_path.empty()) {
        LoadResult lr = load_set(c.coeffs_path, digits);
        for (const auto& w : lr.warnings) std::cerr << "warning: " << w << "\n";
        s = lr.set;
        if (!c.residue_scale.empty()) {
            XReal f = XReal::parse(c.residue_scale, digits);
            for (auto& a : s.residues) a = f * a;
            s.label += " (residues scaled by " + c.residue_scale + ")";
        }
    } else {
        s = builtin_set(c.order, digits);
    }
    return s;
}

int effective_digits(const Common& c, int default_digits) {
    return c.digits > 0 ? c.digits : default_digits;
}

// "log:-1e3:-1e-8:20000", "linear:-2:0:100", or "standard"
Grid parse_grid(const std::string& spec) {
    if (spec == "standard" || spec.empty()) return Grid::standard_protocol();
    std::vector<std::string> parts;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t next = spec.find(':', pos);
        if (next == std::string::npos) {
            parts.push_back(spec.substr(pos));
            break;
        }
        parts.push_back(spec.substr(pos, next - pos));
        pos = next + 1;
    }
    if (parts.size() != 4)
        throw DomainError("grid spec must be kind:lo:hi:n or \"standard\"");
    GridSegment::Kind kind;
    if (parts[0] == "log") kind = GridSegment::Log;
    else if (parts[0] == "linear") kind = GridSegment::Linear;
    else throw DomainError("grid kind must be log or linear");
    return make_grid(kind, XReal::parse(parts[1], 30), XReal::parse(parts[2], 30),
                     std::stol(parts[3]));
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file " + path);
    return out;
}

void add_common(CLI::App* cmd, Common& c, bool with_order = true) {
    if (with_order)
        cmd->add_option("--order", c.order, "built-in approximation order (14 or 16)")
            ->check(CLI::IsMember({14, 16}));
    cmd->add_option("--digits", c.digits, "working precision in decimal digits");
    cmd->add_option("--coeffs", c.coeffs_path,
                    "JSON coefficient file overriding the built-in set");
    cmd->add_option("--residue-scale", c.residue_scale,
                    "rescale loaded residues by this decimal factor (for files "
                    "using the doubled-residue convention)");
}

json set_to_json(const CoefficientSet& s) {
    return json::parse(set_to_json_text(s));
}

int run_tool(int argc, char** argv) {
    CLI::App app{"Rational-approximation toolkit for the matrix exponential on "
                 "the negative real axis"};
    app.require_subcommand(1);

    // ---- errcurve ----------------------------------------------------------
    Common ec;
    std::string ec_grid = "standard", ec_csv;
    auto* cmd_ec = app.add_subcommand(
        "errcurve", "sample e^x - r(x) over a grid and write x,error CSV");
    add_common(cmd_ec, ec);
    cmd_ec->add_option("--grid", ec_grid, "kind:lo:hi:n or \"standard\"");
    cmd_ec->add_option("--csv", ec_csv, "output CSV path")->required();
    cmd_ec->callback([&] {
        int digits = effective_digits(ec, 40);
        CoefficientSet s = resolve_set(ec, 40);
        Grid g = parse_grid(ec_grid);
        std::ofstream out = open_out(ec_csv);
        out << "x,error\n";
        ErrorCurve c = sample_error(s, g, digits);
        for (size_t i = 0; i < c.xs.size(); ++i)
            out << c.xs[i].str() << "," << c.values[i].str() << "\n";
        XReal sup = sup_error(c);
        std::cout << "points " << c.xs.size() << ", sup |error| = " << sup.str(8)
                  << "\n";
    });

    // ---- equioscillation ---------------------------------------------------
    Common eq;
    std::string eq_grid = "standard", eq_out;
    double eq_tol = 0.1;
    auto* cmd_eq = app.add_subcommand(
        "equioscillation",
        "locate near-maximal alternating extrema of the error curve");
    add_common(cmd_eq, eq);
    cmd_eq->add_option("--grid", eq_grid, "kind:lo:hi:n or \"standard\"");
    cmd_eq->add_option("--tolerance", eq_tol, "near-maximal band as a fraction");
    cmd_eq->add_option("--out", eq_out, "output JSON path")->required();
    cmd_eq->callback([&] {
        int digits = effective_digits(eq, 40);
        CoefficientSet s = resolve_set(eq, 40);
        ErrorCurve c = sample_error(s, parse_grid(eq_grid), digits);
        EquioscillationReport rep = equioscillation_report(c, eq_tol);
        json j;
        j["order"] = s.order;
        j["digits"] = digits;
        j["sup"] = rep.sup.str();
        j["alternation_count"] = rep.alternation_count;
        j["includes_infinity_limit"] = rep.includes_infinity_limit;
        j["level_uniformity"] = rep.level_uniformity.str();
        json ext = json::array();
        for (const auto& e : rep.extrema)
            ext.push_back({{"x", e.at_infinity ? std::string("-inf") : e.x.str()},
                           {"value", e.value.str()}});
        j["extrema"] = ext;
        open_out(eq_out) << j.dump(2) << "\n";
        std::cout << "alternation count " << rep.alternation_count << ", sup "
                  << rep.sup.str(8) << "\n";
    });

    // ---- roundtrip ---------------------------------------------------------
    Common rt;
    std::string rt_out;
    auto* cmd_rt = app.add_subcommand(
        "roundtrip",
        "expand the set to polynomials, re-root, recompute residues, and "
        "report digit agreement");
    add_common(cmd_rt, rt);
    cmd_rt->add_option("--out", rt_out, "output JSON path")->required();
    cmd_rt->callback([&] {
        int digits = effective_digits(rt, 50);
        CoefficientSet s = resolve_set(rt, 50);
        RoundTripReport rep = roundtrip_report(s, digits);
        json j;
        j["order"] = rep.order;
        j["digits"] = rep.digits;
        j["min_agreement_digits"] = rep.min_agree;
        auto poly_json = [](const Polynomial& p) {
            json c = json::array();
            for (const auto& e : p.coeffs) c.push_back(e.str());
            return json{{"coeffs", c}};
        };
        j["denominator"] = poly_json(denominator_from_poles(s, digits));
        j["numerator"] = poly_json(numerator_from_pfd(s, digits));
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"name", r.name},
                            {"original_re", r.original.re.str()},
                            {"original_im", r.original.im.str()},
                            {"recomputed_re", r.recomputed.re.str()},
                            {"recomputed_im", r.recomputed.im.str()},
                            {"agreement_digits", r.agree_digits}});
        j["rows"] = rows;
        open_out(rt_out) << j.dump(2) << "\n";
        std::cout << "min agreement " << rep.min_agree << " digits\n";
    });

    // ---- perturb -----------------------------------------------------------
    Common pb;
    std::string pb_grid = "log:-1e3:-1e-8:10000", pb_out;
    int pb_kept = 6;
    auto* cmd_pb = app.add_subcommand(
        "perturb", "measure |r - r~| for digit-truncated coefficients against "
                   "the first-order bound");
    add_common(cmd_pb, pb);
    cmd_pb->add_option("--digits-kept", pb_kept, "significant digits kept");
    cmd_pb->add_option("--grid", pb_grid, "kind:lo:hi:n");
    cmd_pb->add_option("--out", pb_out, "output JSON path")->required();
    cmd_pb->callback([&] {
        int digits = effective_digits(pb, 40);
        CoefficientSet s = resolve_set(pb, 40);
        PerturbationReport rep = truncation_experiment(s, pb_kept, parse_grid(pb_grid),
                                                       digits);
        json j;
        j["base"] = rep.base_label;
        j["perturbed"] = rep.perturbed_label;
        j["grid"] = rep.grid.describe();
        j["max_measured"] = rep.max_measured.str();
        j["max_bound"] = rep.max_bound.str();
        json pts = json::array();
        for (size_t i = 0; i < rep.xs.size(); ++i)
            pts.push_back({{"x", rep.xs[i].str()},
                           {"measured", rep.measured[i].str()},
                           {"bound", rep.bound[i].str()}});
        j["points"] = pts;
        open_out(pb_out) << j.dump(2) << "\n";
        std::cout << "max measured " << rep.max_measured.str(6) << ", max bound "
                  << rep.max_bound.str(6) << "\n";
    });

    // ---- cplane ------------------------------------------------------------
    Common cp;
    std::string cp_out;
    int cp_kept = 6;
    long cp_nre = 500, cp_nim = 400;
    auto* cmd_cp = app.add_subcommand(
        "cplane", "log10 |r - r~| over the complex window Re [-15,10], Im [0,20]");
    add_common(cmd_cp, cp);
    cmd_cp->add_option("--digits-kept", cp_kept, "significant digits kept");
    cmd_cp->add_option("--nre", cp_nre, "cells along Re");
    cmd_cp->add_option("--nim", cp_nim, "cells along Im");
    cmd_cp->add_option("--out", cp_out, "output CSV path")->required();
    cmd_cp->callback([&] {
        int digits = effective_digits(cp, 32);
        CoefficientSet s = resolve_set(cp, 32);
        ComplexGrid g = complex_grid_diff(s, truncate_set(s, cp_kept),
                                          XReal(-15, 30), XReal(10, 30),
                                          XReal(0, 30), XReal(20, 30), cp_nre,
                                          cp_nim, digits);
        std::ofstream out = open_out(cp_out);
        out << "re,im,log10diff\n";
        for (const auto& th : g.pole_markers)
            out << "# pole," << th.re.str() << "," << th.im.str() << "\n";
        char buf[64];
        for (long iy = 0; iy < g.nim; ++iy)
            for (long ix = 0; ix < g.nre; ++ix) {
                size_t cell = (size_t)(iy * g.nre + ix);
                out << g.re_axis[(size_t)ix].str() << ","
                    << g.im_axis[(size_t)iy].str() << ",";
                if (g.masked[cell]) {
                    out << "MASK\n";
                } else {
                    std::snprintf(buf, sizeof buf, "%.6f", g.log10diff[cell]);
                    out << buf << "\n";
                }
            }
        std::cout << "cells " << g.nre * g.nim << " (poles marked: "
                  << g.pole_markers.size() << ")\n";
    });

    // ---- refit -------------------------------------------------------------
    Common rf;
    std::string rf_out;
    int rf_kept = 6;
    long rf_points = 100000;
    auto* cmd_rf = app.add_subcommand(
        "refit", "least-squares residues for truncated poles; reports the "
                 "naive/mixed/refit sup errors");
    add_common(cmd_rf, rf);
    cmd_rf->add_option("--digits-kept", rf_kept, "significant digits kept in poles");
    cmd_rf->add_option("--points", rf_points, "fit sample count on [-1e3, -1e-10]")
        ->check(CLI::Range(16L, 2000000L));
    cmd_rf->add_option("--out", rf_out, "output JSON path")->required();
    cmd_rf->callback([&] {
        int digits = effective_digits(rf, 40);
        CoefficientSet s = resolve_set(rf, 40);
        RefitExperiment ex = refit_experiment(s, rf_kept, rf_points, digits);
        json j;
        j["digits_kept"] = rf_kept;
        j["fit_points"] = rf_points;
        j["naive_sup"] = ex.naive_sup.str();
        j["mixed_sup"] = ex.mixed_sup.str();
        j["refit_sup"] = ex.refit_sup.str();
        j["fitted"] = set_to_json(ex.refit_set);
        open_out(rf_out) << j.dump(2) << "\n";
        std::cout << "naive " << ex.naive_sup.str(4) << ", mixed "
                  << ex.mixed_sup.str(4) << ", refit " << ex.refit_sup.str(4) << "\n";
    });

    // ---- matexp ------------------------------------------------------------
    Common mx;
    std::string mx_matrix, mx_x0, mx_t = "1", mx_out;
    auto* cmd_mx = app.add_subcommand(
        "matexp", "apply exp(At) to a vector through the per-pole solves");
    add_common(cmd_mx, mx);
    cmd_mx->add_option("--matrix", mx_matrix, "matrix JSON {n, rows}")->required();
    cmd_mx->add_option("--t", mx_t, "time (decimal string)");
    cmd_mx->add_option("--x0", mx_x0, "vector JSON {values}")->required();
    cmd_mx->add_option("--out", mx_out, "output JSON path")->required();
    cmd_mx->callback([&] {
        int digits = effective_digits(mx, 64);
        CoefficientSet s = resolve_set(mx, 64);
        std::ifstream am(mx_matrix);
        if (!am) throw Error("cannot open " + mx_matrix);
        json jm = json::parse(am, nullptr, true, true);
        int n = jm.at("n").get<int>();
        RealMatrix A(n, digits);
        const auto& rows = jm.at("rows");
        if ((int)rows.size() != n) throw ValidationError("matrix: wrong row count");
        for (int i = 0; i < n; ++i) {
            if ((int)rows[(size_t)i].size() != n)
                throw ValidationError("matrix: wrong column count in row " +
                                      std::to_string(i));
            for (int j = 0; j < n; ++j)
                A.at(i, j) = XReal::parse(rows[(size_t)i][(size_t)j].get<std::string>(),
                                          digits);
        }
        std::ifstream av(mx_x0);
        if (!av) throw Error("cannot open " + mx_x0);
        json jv = json::parse(av, nullptr, true, true);
        std::vector<XReal> x0;
        for (const auto& e : jv.at("values"))
            x0.push_back(XReal::parse(e.get<std::string>(), digits));
        std::vector<XReal> y = cram_apply(A, XReal::parse(mx_t, digits), x0, s);
        json j;
        json vals = json::array();
        for (const auto& e : y) vals.push_back(e.str());
        j["values"] = vals;
        open_out(mx_out) << j.dump(2) << "\n";
        std::cout << "solved " << s.poles.size() << " shifted systems of size " << n
                  << "\n";
    });

    // ---- decay-demo --------------------------------------------------------
    Common dd;
    std::string dd_lambdas = "1,0.1,0.01", dd_t = "5";
    auto* cmd_dd = app.add_subcommand(
        "decay-demo", "sequential decay chain: per-pole solves against the "
                      "closed-form chain solution");
    add_common(cmd_dd, dd);
    cmd_dd->add_option("--lambdas", dd_lambdas, "comma-separated decay constants");
    cmd_dd->add_option("--t", dd_t, "time (decimal string)");
    cmd_dd->callback([&] {
        int digits = effective_digits(dd, 64);
        CoefficientSet s = resolve_set(dd, 64);
        DecayChain chain;
        size_t pos = 0;
        while (pos <= dd_lambdas.size()) {
            size_t next = dd_lambdas.find(',', pos);
            std::string tok = next == std::string::npos
                                  ? dd_lambdas.substr(pos)
                                  : dd_lambdas.substr(pos, next - pos);
            if (!tok.empty()) chain.lambdas.push_back(XReal::parse(tok, digits));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        XReal t = XReal::parse(dd_t, digits);
        RealMatrix A = chain_matrix(chain, digits);
        std::vector<XReal> x0((size_t)A.n, XReal(0, digits));
        x0[0] = XReal(1, digits);
        std::vector<XReal> y = cram_apply(A, t, x0, s);
        std::vector<XReal> b = bateman_oracle(chain, t, nullptr, digits);
        XReal worst(0, 30);
        for (int i = 0; i < A.n; ++i) {
            XReal d = (y[(size_t)i] - b[(size_t)i]).abs();
            if (d > worst) worst = d;
            std::cout << "nuclide " << i + 1 << ": solver " << y[(size_t)i].str(20)
                      << "  closed-form " << b[(size_t)i].str(20) << "\n";
        }
        std::cout << "max |difference| = " << (worst.is_zero() ? "0" : worst.str(4))
                  << "\n";
    });

    // ---- halphen -----------------------------------------------------------
    Common hp;
    auto* cmd_hp = app.add_subcommand(
        "halphen", "sup-error ratio between orders 14 and 16 against the "
                   "asymptotic per-order factor squared");
    cmd_hp->add_option("--digits", hp.digits, "working precision");
    cmd_hp->callback([&] {
        int digits = hp.digits > 0 ? hp.digits : 40;
        HalphenResult h = halphen_ratio(builtin_set(14, digits),
                                        builtin_set(16, digits),
                                        Grid::standard_protocol(), digits);
        std::cout << "sup(order 14) = " << h.sup_a.str(8) << "\n"
                  << "sup(order 16) = " << h.sup_b.str(8) << "\n"
                  << "measured ratio = " << h.ratio.str(8) << "\n"
                  << "reference H^2  = " << h.reference.str(8) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_tool(argc, argv);
    } catch (const cram::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
