#pragma once

// Command-line front end. Every subcommand produces a deterministic report
// (human-readable by default, JSON with --json): identical inputs yield
// byte-identical output. Exit codes: 0 = all checks passed, 1 = a
// mathematical check failed, 2 = input or parse error. Every failed check
// carries a witness naming the exact offending quadruple, point, or value.

#include <kcm/engine.hpp>
#include <kcm/errors.hpp>
#include <kcm/identities.hpp>
#include <kcm/io.hpp>
#include <kcm/model.hpp>
#include <kcm/potential.hpp>
#include <kcm/theta.hpp>
#include <kcm/tv.hpp>

#include <CLI11.hpp>

#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace kcm {
namespace cli {

struct ReportCheck {
    std::string name;
    bool holds = true;
    std::string witness; // nonempty exactly when holds == false
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<ReportCheck> checks;
    std::vector<std::pair<std::string, std::string>> values;
    std::vector<std::pair<std::string, std::string>> outputs;
    std::vector<std::pair<std::string, Json>> objects; // inline payloads

    bool all_hold() const {
        for (const auto& c : checks)
            if (!c.holds) return false;
        return true;
    }

    Json to_json() const {
        Json j;
        j["command"] = command;
        Json in = Json::object();
        for (const auto& [k, v] : inputs) in[k] = v;
        j["inputs"] = in;
        Json cs = Json::array();
        for (const auto& c : checks) {
            Json cj;
            cj["name"] = c.name;
            cj["holds"] = c.holds;
            if (!c.holds) cj["witness"] = c.witness;
            cs.push_back(cj);
        }
        j["checks"] = cs;
        Json vals = Json::object();
        for (const auto& [k, v] : values) vals[k] = v;
        j["values"] = vals;
        Json outs = Json::object();
        for (const auto& [k, v] : outputs) outs[k] = v;
        j["outputs"] = outs;
        for (const auto& [k, v] : objects) j[k] = v;
        j["result"] = all_hold() ? "ok" : "fail";
        return j;
    }

    void print(std::ostream& os, bool as_json) const {
        if (as_json) {
            os << to_json().dump(2) << "\n";
            return;
        }
        os << "command: " << command << "\n";
        for (const auto& [k, v] : inputs) os << "input " << k << ": " << v << "\n";
        for (const auto& c : checks) {
            os << "check " << c.name << ": " << (c.holds ? "ok" : "FAIL");
            if (!c.holds) os << " (" << c.witness << ")";
            os << "\n";
        }
        for (const auto& [k, v] : values) os << k << " = " << v << "\n";
        for (const auto& [k, v] : outputs) os << "output " << k << ": " << v << "\n";
        for (const auto& [k, v] : objects) os << k << ":\n" << v.dump(2) << "\n";
        os << "result: " << (all_hold() ? "ok" : "FAIL") << "\n";
    }
};

// ---- small helpers ---------------------------------------------------------

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << text;
    if (!out) throw ParseError("write failed: " + path);
}

inline void write_json_file(const std::string& path, const Json& j) {
    write_file(path, j.dump(2) + "\n");
}

inline Point parse_point(const std::string& text, int m) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (static_cast<int>(parts.size()) != m)
        throw ParseError("point has " + std::to_string(parts.size()) +
                         " coordinates but the metric lives on dimension " + std::to_string(m));
    Point p;
    p.reserve(parts.size());
    for (const auto& s : parts) p.push_back(Rational::parse(s));
    return p;
}

inline std::string quad_str(int i, int j, int k, int l) { // takes 0-based, prints 1-based
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
           std::to_string(k + 1) + "," + std::to_string(l + 1) + ")";
}

inline std::string point_str(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += p[i].str();
    }
    return s + ")";
}

inline std::string identity_witness(const IdentityReport& rep) {
    return "at " + quad_str(rep.at[0], rep.at[1], rep.at[2], rep.at[3]) + " value " +
           rep.value.str();
}

inline std::string tensor_nonzero_witness(const std::string& label, const Tensor4& t) {
    for (int i = 0; i < t.m; ++i)
        for (int j = 0; j < t.m; ++j)
            for (int k = 0; k < t.m; ++k)
                for (int l = 0; l < t.m; ++l)
                    if (!t.at(i, j, k, l).is_zero())
                        return label + quad_str(i, j, k, l) + " = " + t.at(i, j, k, l).str();
    return label + " = 0";
}

inline std::string tensor_diff_witness(const Tensor4& got, const Tensor4& expected) {
    for (int i = 0; i < got.m; ++i)
        for (int j = 0; j < got.m; ++j)
            for (int k = 0; k < got.m; ++k)
                for (int l = 0; l < got.m; ++l)
                    if (!(got.at(i, j, k, l) == expected.at(i, j, k, l)))
                        return "at " + quad_str(i, j, k, l) + " got " + got.at(i, j, k, l).str() +
                               ", expected " + expected.at(i, j, k, l).str();
    return "";
}

// ---- subcommand handlers ---------------------------------------------------

inline Report do_check(const std::string& model_path, bool want_json) {
    Report rep;
    rep.command = "check";
    rep.inputs.push_back({"model", model_path});
    Json j = load_json(model_path);
    std::optional<CurvatureModel> mod;
    try {
        mod = model_from_json(j);
    } catch (const SymmetryConflict& e) {
        rep.checks.push_back({"symmetries", false, e.what()});
        return rep;
    } catch (const BianchiViolation& e) {
        rep.checks.push_back({"symmetries", true, ""});
        rep.checks.push_back({"bianchi", false, e.what()});
        return rep;
    }
    rep.checks.push_back({"symmetries", true, ""});
    rep.checks.push_back({"bianchi", true, ""});
    IdentityReport gray = check_gray(*mod);
    IdentityReport kae = check_kaehler(*mod);
    rep.checks.push_back({"gray", gray.holds, gray.holds ? "" : identity_witness(gray)});
    rep.checks.push_back({"kaehler", kae.holds, kae.holds ? "" : identity_witness(kae)});
    ContractionReport con = contractions(*mod);
    rep.values.push_back({"tau", con.tau.str()});
    rep.values.push_back({"tau_star", con.tau_star.str()});
    if (want_json) {
        rep.objects.push_back({"gray_report", identity_report_to_json(gray)});
        rep.objects.push_back({"kaehler_report", identity_report_to_json(kae)});
    }
    return rep;
}

inline Report do_contract(const std::string& model_path) {
    Report rep;
    rep.command = "contract";
    rep.inputs.push_back({"model", model_path});
    CurvatureModel mod = model_from_json(load_json(model_path));
    ContractionReport con = contractions(mod);
    rep.values.push_back({"tau", con.tau.str()});
    rep.values.push_back({"tau_star", con.tau_star.str()});
    const int m = mod.s.m;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
            if (!con.rho.at(i, j).is_zero())
                rep.values.push_back({"rho(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                                      con.rho.at(i, j).str()});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (!con.rho_star.at(i, j).is_zero())
                rep.values.push_back({"rho_star(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                                      con.rho_star.at(i, j).str()});
    return rep;
}

inline Report do_decompose(const std::string& model_path, bool gram, bool want_json) {
    Report rep;
    rep.command = "decompose";
    rep.inputs.push_back({"model", model_path});
    CurvatureModel mod = model_from_json(load_json(model_path));
    IdentityReport kae = check_kaehler(mod);
    rep.checks.push_back({"kaehler", kae.holds, kae.holds ? "" : identity_witness(kae)});
    if (!kae.holds) return rep;
    const bool use_gram = gram || mod.s.kind == Kind::Para;
    rep.inputs.push_back({"method", use_gram ? "gram" : "closed-form"});
    TVSplit split = use_gram ? tv_project_gram(mod) : tv_project_closed_form(mod);
    Tensor4 sum = split.p1;
    sum += split.p2;
    sum += split.p3;
    const bool sums = sum == mod.a;
    rep.checks.push_back({"components-sum-to-model", sums, sums ? "" : tensor_diff_witness(sum, mod.a)});
    const std::array<std::pair<const char*, const Tensor4*>, 3> parts = {
        {{"p1", &split.p1}, {"p2", &split.p2}, {"p3", &split.p3}}};
    for (const auto& [name, t] : parts)
        for (const ComponentEntry& e : model_components(*t))
            rep.values.push_back({std::string(name) + "(" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                      "," + std::to_string(e.k) + "," + std::to_string(e.l) + ")",
                                  e.v.str()});
    if (want_json)
        for (const auto& [name, t] : parts)
            rep.objects.push_back({name, model_to_json(model_from_tensor(mod.s, *t))});
    return rep;
}

struct RealizeOpts {
    std::string model_path;
    bool random = false;
    int m = 4;
    std::string kind = "complex";
    std::uint64_t seed = 0;
    std::string theta_out;
    std::string metric_out;
};

inline Report do_realize(const RealizeOpts& o, bool want_json) {
    Report rep;
    rep.command = "realize";
    if (o.random && !o.model_path.empty())
        throw ParseError("give either a model file or --random, not both");
    if (!o.random && o.model_path.empty())
        throw ParseError("realize needs a model file or --random");
    CurvatureModel mod = [&] {
        if (!o.random) {
            rep.inputs.push_back({"model", o.model_path});
            return model_from_json(load_json(o.model_path));
        }
        Structure s = standard_structure(o.m, kind_parse(o.kind));
        rep.inputs.push_back({"random", "true"});
        rep.inputs.push_back({"m", std::to_string(o.m)});
        rep.inputs.push_back({"kind", kind_name(s.kind)});
        rep.inputs.push_back({"seed", std::to_string(o.seed)});
        return random_model(s, o.seed, /*kaehler_only=*/true);
    }();
    IdentityReport kae = check_kaehler(mod);
    rep.checks.push_back({"kaehler", kae.holds, kae.holds ? "" : identity_witness(kae)});
    if (!kae.holds) return rep;
    ThetaTensor th = realize(mod);
    Tensor4 kt = apply_K(th);
    rep.checks.push_back(
        {"theta-in-kernel", kt.is_zero(), kt.is_zero() ? "" : tensor_nonzero_witness("K(theta)", kt)});
    Tensor4 oc = origin_curvature(th);
    const bool match = oc == mod.a;
    rep.checks.push_back(
        {"origin-curvature-matches-model", match, match ? "" : tensor_diff_witness(oc, mod.a)});
    if (!o.theta_out.empty()) {
        write_json_file(o.theta_out, theta_to_json(th));
        rep.outputs.push_back({"theta", o.theta_out});
    } else {
        rep.objects.push_back({"theta", theta_to_json(th)});
    }
    if (!o.metric_out.empty()) {
        write_json_file(o.metric_out, metric_to_json(metric_from_theta(th)));
        rep.outputs.push_back({"metric", o.metric_out});
    }
    (void)want_json;
    return rep;
}

inline Report do_curvature(const std::string& metric_path, const std::string& at) {
    Report rep;
    rep.command = "curvature";
    rep.inputs.push_back({"metric", metric_path});
    rep.inputs.push_back({"at", at});
    PolynomialMetric g = metric_from_json(load_json(metric_path));
    Point p = parse_point(at, g.s.m);
    Tensor4 r;
    try {
        r = curvature_at(g, p);
    } catch (const SingularMetric&) {
        rep.checks.push_back({"metric-invertible-at-point", false,
                              "metric is not invertible at " + point_str(p)});
        return rep;
    }
    rep.checks.push_back({"metric-invertible-at-point", true, ""});
    try {
        validate_curvature_tensor(r);
        rep.checks.push_back({"curvature-symmetries", true, ""});
    } catch (const Error& e) {
        rep.checks.push_back({"curvature-symmetries", false, e.what()});
        return rep;
    }
    for (const ComponentEntry& e : model_components(r))
        rep.values.push_back({"R(" + std::to_string(e.i) + "," + std::to_string(e.j) + "," +
                                  std::to_string(e.k) + "," + std::to_string(e.l) + ")",
                              e.v.str()});
    rep.values.push_back({"tau", scalar_curvature_at(g, p).str()});
    return rep;
}

struct VerifyOpts {
    std::string model_path;
    std::string theta_path;
    int points = 5;
    std::uint64_t seed = 0;
};

inline Report do_verify(const VerifyOpts& o) {
    Report rep;
    rep.command = "verify";
    rep.inputs.push_back({"model", o.model_path});
    rep.inputs.push_back({"theta", o.theta_path});
    rep.inputs.push_back({"points", std::to_string(o.points)});
    rep.inputs.push_back({"seed", std::to_string(o.seed)});
    CurvatureModel mod = model_from_json(load_json(o.model_path));
    ThetaTensor th = theta_from_json(load_json(o.theta_path));
    if (mod.s.m != th.s.m || mod.s.kind != th.s.kind)
        throw ParseError("model and theta disagree on dimension or kind");

    Tensor4 kt = apply_K(th);
    rep.checks.push_back(
        {"theta-in-kernel", kt.is_zero(), kt.is_zero() ? "" : tensor_nonzero_witness("K(theta)", kt)});
    Tensor4 oc = origin_curvature(th);
    const bool match = oc == mod.a;
    rep.checks.push_back(
        {"origin-curvature-matches-model", match, match ? "" : tensor_diff_witness(oc, mod.a)});

    PolynomialMetric g = metric_from_theta(th);
    Prng rng(o.seed);
    std::vector<Point> pts;
    for (int n = 0; n < o.points; ++n) pts.push_back(random_rational_point(rng, g));

    ReportCheck dom{"domega-zero-at-points", true, ""};
    ReportCheck kae{"kaehler-identity-at-points", true, ""};
    ReportCheck gray{"gray-identity-at-points", true, ""};
    for (const Point& p : pts) {
        if (dom.holds) {
            Rank3 d = kaehler_form_d_at(g, p);
            if (!d.is_zero()) {
                for (int a = 0; a < d.m && dom.holds; ++a)
                    for (int b = 0; b < d.m && dom.holds; ++b)
                        for (int c = 0; c < d.m && dom.holds; ++c)
                            if (!d.at(a, b, c).is_zero()) {
                                dom.holds = false;
                                dom.witness = "dOmega(" + std::to_string(a + 1) + "," +
                                              std::to_string(b + 1) + "," + std::to_string(c + 1) +
                                              ") = " + d.at(a, b, c).str() + " at " + point_str(p);
                            }
            }
        }
        if (kae.holds || gray.holds) {
            CurvatureModel at_p = model_from_tensor(mod.s, curvature_at(g, p));
            if (kae.holds) {
                IdentityReport r = check_kaehler(at_p);
                if (!r.holds) {
                    kae.holds = false;
                    kae.witness = identity_witness(r) + " at " + point_str(p);
                }
            }
            if (gray.holds) {
                IdentityReport r = check_gray(at_p);
                if (!r.holds) {
                    gray.holds = false;
                    gray.witness = identity_witness(r) + " at " + point_str(p);
                }
            }
        }
    }
    rep.checks.push_back(dom);
    rep.checks.push_back(kae);
    rep.checks.push_back(gray);
    rep.values.push_back(
        {"tau_at_origin",
         scalar_curvature_at(g, Point(static_cast<std::size_t>(g.s.m), Rational(0))).str()});
    return rep;
}

struct CscOpts {
    std::string theta_path;
    std::string c_str;  // empty: default to the scalar curvature at the origin
    int degree = 0;     // 0: default to 8 for m == 4, else 6
    std::string out;
};

inline Report do_csc(const CscOpts& o) {
    Report rep;
    rep.command = "csc";
    rep.inputs.push_back({"theta", o.theta_path});
    ThetaTensor th = theta_from_json(load_json(o.theta_path));
    const int m = th.s.m;
    const int N = o.degree > 0 ? o.degree : (m == 4 ? 8 : 6);
    PolynomialMetric g = metric_from_theta(th);
    const Rational c = o.c_str.empty()
                           ? scalar_curvature_at(g, Point(static_cast<std::size_t>(m), Rational(0)))
                           : Rational::parse(o.c_str);
    rep.inputs.push_back({"c", c.str()});
    rep.inputs.push_back({"degree", std::to_string(N)});
    try {
        Potential pot = solve_csc(th, c, N);
        rep.checks.push_back({"theta-in-kernel", true, ""});
        rep.checks.push_back({"leading-coefficient-nondegenerate", true, ""});
        rep.checks.push_back({"residual-zero-through-degree", true, ""});
        rep.values.push_back({"residual_zero_through", std::to_string(pot.residual_zero_through)});
        write_json_file(o.out, potential_to_json(pot));
        rep.outputs.push_back({"potential", o.out});
    } catch (const NotInKernel& e) {
        rep.checks.push_back({"theta-in-kernel", false, e.what()});
    } catch (const LeadingCoefficientDegenerate& e) {
        rep.checks.push_back({"theta-in-kernel", true, ""});
        rep.checks.push_back({"leading-coefficient-nondegenerate", false, e.what()});
    }
    return rep;
}

inline int do_fixture(const std::string& name, const std::string& out_path, std::ostream& out) {
    Json j = fixture_json(name);
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        out << text;
    else
        write_file(out_path, text);
    return 0;
}

struct RandomOpts {
    int m = 4;
    std::string kind = "complex";
    std::uint64_t seed = 0;
    bool kaehler = false;
};

inline int do_random(const RandomOpts& o, std::ostream& out) {
    Structure s = standard_structure(o.m, kind_parse(o.kind));
    CurvatureModel mod = random_model(s, o.seed, o.kaehler);
    out << model_to_json(mod).dump(2) << "\n";
    return 0;
}

} // namespace cli

// Parse the argument list (without the program name) and run one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact-arithmetic toolkit for (para-)Kaehler curvature models", "kcm"};
    app.require_subcommand(1);
    bool want_json = false;
    app.add_flag("--json", want_json, "emit the report as JSON");

    std::string check_model;
    CLI::App* c_check = app.add_subcommand("check", "verify curvature symmetries and identities of a model");
    c_check->fallthrough();
    c_check->add_option("model", check_model, "model JSON file")->required();

    std::string contract_model;
    CLI::App* c_contract = app.add_subcommand("contract", "Ricci tensors and scalar curvatures of a model");
    c_contract->fallthrough();
    c_contract->add_option("model", contract_model, "model JSON file")->required();

    std::string dec_model;
    bool dec_gram = false;
    CLI::App* c_decompose = app.add_subcommand("decompose", "orthogonal three-component splitting of a Kaehler model");
    c_decompose->fallthrough();
    c_decompose->add_option("model", dec_model, "model JSON file")->required();
    c_decompose->add_flag("--gram", dec_gram, "force the Gram-matrix projection");

    cli::RealizeOpts real_o;
    CLI::App* c_realize = app.add_subcommand("realize", "build a polynomial metric realizing a Kaehler model");
    c_realize->fallthrough();
    c_realize->add_option("model", real_o.model_path, "model JSON file");
    c_realize->add_flag("--random", real_o.random, "realize a random Kaehler model instead");
    c_realize->add_option("--m", real_o.m, "dimension for --random");
    c_realize->add_option("--kind", real_o.kind, "complex or para, for --random");
    c_realize->add_option("--seed", real_o.seed, "seed for --random");
    c_realize->add_option("-o,--output", real_o.theta_out, "write the product tensor here");
    c_realize->add_option("--metric", real_o.metric_out, "also write the polynomial metric here");

    std::string curv_metric, curv_at;
    CLI::App* c_curvature = app.add_subcommand("curvature", "curvature tensor of a polynomial metric at a point");
    c_curvature->fallthrough();
    c_curvature->add_option("metric", curv_metric, "metric JSON file")->required();
    c_curvature->add_option("--at", curv_at, "evaluation point, comma-separated rationals")->required();

    cli::VerifyOpts verify_o;
    CLI::App* c_verify = app.add_subcommand("verify", "verify a model/product-tensor pair at random points");
    c_verify->fallthrough();
    c_verify->add_option("model", verify_o.model_path, "model JSON file")->required();
    c_verify->add_option("theta", verify_o.theta_path, "product tensor JSON file")->required();
    c_verify->add_option("--points", verify_o.points, "number of random sample points");
    c_verify->add_option("--seed", verify_o.seed, "sampling seed");

    cli::CscOpts csc_o;
    CLI::App* c_csc = app.add_subcommand("csc", "constant-scalar-curvature potential via jet recursion");
    c_csc->fallthrough();
    c_csc->add_option("theta", csc_o.theta_path, "product tensor JSON file")->required();
    c_csc->add_option("--c", csc_o.c_str, "target constant (default: scalar curvature at the origin)");
    c_csc->add_option("--degree", csc_o.degree, "jet order to solve through (default 8 when m=4, else 6)");
    c_csc->add_option("-o,--output", csc_o.out, "write the potential here")->required();

    std::string fix_name, fix_out;
    CLI::App* c_fixture = app.add_subcommand("fixture", "emit a built-in fixture as JSON");
    c_fixture->fallthrough();
    c_fixture->add_option("name", fix_name, "fixture name")->required();
    c_fixture->add_option("-o,--output", fix_out, "write to file instead of stdout");

    cli::RandomOpts rand_o;
    CLI::App* c_random = app.add_subcommand("random", "emit a seeded random curvature model as JSON");
    c_random->fallthrough();
    c_random->add_option("--m", rand_o.m, "dimension");
    c_random->add_option("--kind", rand_o.kind, "complex or para");
    c_random->add_option("--seed", rand_o.seed, "seed");
    c_random->add_flag("--kaehler", rand_o.kaehler, "project onto the Kaehler subspace");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        std::optional<cli::Report> rep;
        if (app.got_subcommand(c_check)) {
            rep = cli::do_check(check_model, want_json);
        } else if (app.got_subcommand(c_contract)) {
            rep = cli::do_contract(contract_model);
        } else if (app.got_subcommand(c_decompose)) {
            rep = cli::do_decompose(dec_model, dec_gram, want_json);
        } else if (app.got_subcommand(c_realize)) {
            rep = cli::do_realize(real_o, want_json);
        } else if (app.got_subcommand(c_curvature)) {
            rep = cli::do_curvature(curv_metric, curv_at);
        } else if (app.got_subcommand(c_verify)) {
            rep = cli::do_verify(verify_o);
        } else if (app.got_subcommand(c_csc)) {
            rep = cli::do_csc(csc_o);
        } else if (app.got_subcommand(c_fixture)) {
            return cli::do_fixture(fix_name, fix_out, out);
        } else if (app.got_subcommand(c_random)) {
            return cli::do_random(rand_o, out);
        } else {
            return 2; // unreachable: require_subcommand(1)
        }
        rep->print(out, want_json);
        return rep->all_hold() ? 0 : 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BadDimension& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BadThetaSymmetry& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const SymmetryConflict& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BianchiViolation& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownFixture& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace kcm
