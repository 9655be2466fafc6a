#include "lfa/cli_app.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "lfa/continuation.hpp"
#include "lfa/errors.hpp"
#include "lfa/intersection.hpp"
#include "lfa/json_io.hpp"
#include "lfa/series.hpp"
#include "lfa/verify.hpp"

namespace lfa {

namespace {

Eigen::VectorXcd point_for_m(const std::string& text, int m) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw config_error(std::string("bad point: ") + ex.what());
    }
    // For m = 1 a bare [re, im] pair reads as one complex coordinate.
    if (m == 1 && j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        Eigen::VectorXcd x(1);
        x(0) = cplx(j[0].get<double>(), j[1].get<double>());
        return x;
    }
    const Eigen::VectorXcd x = point_from_json(j);
    if (x.size() != m)
        throw config_error("point has " + std::to_string(x.size()) + " coordinates, expected " +
                           std::to_string(m));
    return x;
}

std::vector<int> indices_from_csv(const std::string& text, int m) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        int k = 0;
        try {
            k = std::stoi(tok);
        } catch (...) {
            throw config_error("bad index '" + tok + "' (expected 1-based integers)");
        }
        if (k < 1 || k > m) throw config_error("index " + tok + " outside 1.." + std::to_string(m));
        out.push_back(k - 1);
    }
    return out;
}

Mask mask_from_string(std::string text, int m) {
    std::erase_if(text, [](char ch) { return ch == ',' || ch == '(' || ch == ')' || ch == ' '; });
    if (static_cast<int>(text.size()) != m)
        throw config_error("mask '" + text + "' does not have " + std::to_string(m) + " coordinates");
    std::uint32_t bits = 0;
    for (int i = 0; i < m; ++i) {
        if (text[i] == '1')
            bits |= 1u << i;
        else if (text[i] != '0')
            throw config_error("mask entries must be 0 or 1");
    }
    return Mask(m, bits);
}

json basis_names(const MaskBasis& basis) {
    json names = json::array();
    for (const Mask& v : basis.order) names.push_back(v.str());
    return names;
}

json vector_to_json_values(const Eigen::VectorXcd& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

Eigen::VectorXcd vector_from_json_values(const json& j, int n) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw config_error("expected a vector of length " + std::to_string(n));
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = complex_from_json(j[i]);
    return v;
}

json check_to_json(const CheckResult& c) {
    json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["error"] = c.error;
    j["tolerance"] = c.tolerance;
    j["detail"] = c.detail;
    return j;
}

void emit(const json& j, const std::string& output_path, std::ostream& out) {
    if (output_path.empty()) {
        out << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(output_path);
    if (!f) throw config_error("cannot write output file: " + output_path);
    f << j.dump(2) << "\n";
}

struct MatrixArgs {
    std::string params_file, what, v_text, at_text, frame = "phi", output;
    int k = 0;
};
struct EvalArgs {
    std::string params_file, at_text, deriv_text, output;
    int degree = 60;
    double tail_tol = 1e-12;
    bool vector = false;
};
struct VerifyArgs {
    std::string params_file, output;
    std::uint64_t seed = 42;
    bool strict = false;
    int flat_points = 20, pfaff_points = 5, degree = 60;
};
struct ContinueArgs {
    std::string params_file, path_file, initial_file, frame = "gauged", output;
    bool from_series = false;
    double tol = 1e-10, clearance = 0.02;
    int degree = 60;
};
struct MonodromyArgs {
    std::string params_file, loop_file, frame = "gauged", output;
    double tol = 1e-10, clearance = 0.02;
};

ParameterSet load_params(const std::string& file) {
    if (file.empty()) throw config_error("--params is required");
    return params_from_json(load_json_file(file));
}

int do_matrix(const MatrixArgs& a, std::ostream& out) {
    const ParameterSet p = load_params(a.params_file);
    const int m = p.m();
    json j;
    j["what"] = a.what;
    j["m"] = m;

    if (a.what == "C" || a.what == "phipsi" || a.what == "psipsi") {
        const IntersectionData data = build_intersection(p);
        j["basis"] = basis_names(data.basis);
        j["matrix"] = matrix_to_json(a.what == "C"        ? data.C
                                     : a.what == "phipsi" ? data.phiPsi
                                                          : data.psiPsi);
    } else if (a.what == "P" || a.what == "Pinv") {
        const GaugeData g = build_gauge(p);
        j["basis"] = basis_names(g.basis);
        j["matrix"] = matrix_to_json(a.what == "P" ? g.P : g.Pinv);
    } else if (a.what == "R0k") {
        if (a.k < 1 || a.k > m) throw config_error("R0k needs --k in 1.." + std::to_string(m));
        const ConnectionForm conn = build_connection(p);
        j["basis"] = basis_names(conn.basis);
        j["k"] = a.k;
        j["matrix"] = matrix_to_json(conn.R0[a.k - 1]);
    } else if (a.what == "RV") {
        const ConnectionForm conn = build_connection(p);
        j["basis"] = basis_names(conn.basis);
        if (!a.v_text.empty()) {
            const Mask v = mask_from_string(a.v_text, m);
            if (v.bits() == 0) throw config_error("RV needs a nonzero mask");
            j["v"] = v.str();
            j["matrix"] = matrix_to_json(conn.RV[v.bits()]);
        } else {
            json all;
            for (const Mask& v : conn.basis.order)
                if (v.bits() != 0) all[v.str()] = matrix_to_json(conn.RV[v.bits()]);
            j["matrices"] = std::move(all);
        }
    } else if (a.what == "omega") {
        if (a.at_text.empty()) throw config_error("omega needs --at");
        const Eigen::VectorXcd x = point_for_m(a.at_text, m);
        const ConnectionForm conn = build_connection(p);
        j["basis"] = basis_names(conn.basis);
        j["at"] = point_to_json(x);
        j["frame"] = a.frame;
        std::vector<Eigen::MatrixXcd> omega;
        if (a.frame == "gauged")
            omega = gauged_omega_at(conn, build_gauge(p), x);
        else if (a.frame == "phi")
            omega = omega_at(conn, x);
        else
            throw config_error("--frame must be phi or gauged");
        json arr = json::array();
        for (const auto& M : omega) arr.push_back(matrix_to_json(M));
        j["omega"] = std::move(arr);
    } else {
        throw config_error("unknown --what '" + a.what + "'");
    }
    emit(j, a.output, out);
    return 0;
}

int do_eval(const EvalArgs& a, std::ostream& out) {
    const ParameterSet p = load_params(a.params_file);
    const Eigen::VectorXcd x = point_for_m(a.at_text, p.m());
    SeriesOptions opts;
    opts.max_total_degree = a.degree;
    opts.tail_tolerance = a.tail_tol;
    json j;
    j["at"] = point_to_json(x);
    j["degree"] = opts.max_total_degree;
    if (a.vector) {
        const SolutionVector sol = solution_vector(p, x, opts);
        const MaskBasis basis = make_basis(p.m());
        j["basis"] = basis_names(basis);
        j["vector"] = vector_to_json_values(sol.values);
        j["tail"] = sol.tail;
        j["converged"] = sol.tail <= opts.tail_tolerance;
    } else {
        SeriesValue val;
        if (!a.deriv_text.empty())
            val = fa_partial_truncated(p, x, indices_from_csv(a.deriv_text, p.m()), opts);
        else
            val = fa_truncated(p, x, opts);
        j["value"] = complex_to_json(val.value);
        j["tail"] = val.tail;
        j["converged"] = val.converged(opts.tail_tolerance);
        if (!a.deriv_text.empty()) j["deriv"] = a.deriv_text;
    }
    emit(j, a.output, out);
    return 0;
}

int do_verify(const VerifyArgs& a, std::ostream& out) {
    const ParameterSet p = load_params(a.params_file);
    std::mt19937_64 rng(a.seed);
    SeriesOptions opts;
    opts.max_total_degree = a.degree;

    json j;
    j["m"] = p.m();
    j["seed"] = a.seed;
    const GenericityReport gen = genericity_check(p);
    json gj;
    gj["eps"] = gen.eps;
    gj["issues"] = json::array();
    for (const auto& issue : gen.issues) {
        json ij;
        ij["quantity"] = issue.quantity;
        ij["value"] = complex_to_json(issue.value);
        ij["distance"] = issue.distance;
        gj["issues"].push_back(std::move(ij));
    }
    gj["generic"] = gen.generic();
    j["genericity"] = std::move(gj);

    std::vector<CheckResult> checks;
    checks.push_back(check_det_identity(p));
    checks.push_back(check_intersection_consistency(p));
    checks.push_back(check_dual_construction(p));
    checks.push_back(check_eigenstructure(p));
    checks.push_back(check_gauge_inverse(p));
    checks.push_back(check_biorthogonality(p));
    checks.push_back(check_classical_reduction(p));
    checks.push_back(check_flatness(p, rng, a.flat_points));
    checks.push_back(check_pfaffian(p, rng, a.pfaff_points, opts));

    bool pass = true;
    json arr = json::array();
    for (const auto& c : checks) {
        pass = pass && c.pass;
        arr.push_back(check_to_json(c));
    }
    if (a.strict && !gen.generic()) pass = false;
    j["checks"] = std::move(arr);
    j["pass"] = pass;
    emit(j, a.output, out);
    return pass ? 0 : 1;
}

int do_continue(const ContinueArgs& a, std::ostream& out) {
    const ParameterSet p = load_params(a.params_file);
    if (a.path_file.empty()) throw config_error("--path is required");
    const Path path = path_from_json(load_json_file(a.path_file));
    if (path.start().size() != p.m()) throw config_error("path dimension does not match m");
    if (a.from_series == !a.initial_file.empty())
        throw config_error("choose exactly one of --from-series or --initial");

    const ConnectionForm conn = build_connection(p);
    ContinuationOptions copts;
    copts.tol = a.tol;
    copts.clearance = a.clearance;
    SeriesOptions sopts;
    sopts.max_total_degree = a.degree;

    Eigen::VectorXcd initial;
    if (a.from_series)
        initial = solution_vector(p, path.start(), sopts).values;
    else
        initial = vector_from_json_values(load_json_file(a.initial_file), conn.dim());

    ContinuationResult res;
    if (a.frame == "gauged")
        res = integrate_path(conn, build_gauge(p), path, initial, copts);
    else if (a.frame == "phi")
        res = integrate_path(conn, path, initial, copts);
    else
        throw config_error("--frame must be phi or gauged");

    json j;
    j["frame"] = a.frame;
    j["start"] = point_to_json(path.start());
    j["end_point"] = point_to_json(path.end());
    j["end"] = vector_to_json_values(res.state.col(0));
    j["steps"] = res.steps;
    j["max_local_error"] = res.max_local_error;
    emit(j, a.output, out);
    return 0;
}

int do_monodromy(const MonodromyArgs& a, std::ostream& out) {
    const ParameterSet p = load_params(a.params_file);
    if (a.loop_file.empty()) throw config_error("--loop is required");
    const Path loop = path_from_json(load_json_file(a.loop_file));
    if (loop.start().size() != p.m()) throw config_error("loop dimension does not match m");

    const ConnectionForm conn = build_connection(p);
    ContinuationOptions copts;
    copts.tol = a.tol;
    copts.clearance = a.clearance;

    Eigen::MatrixXcd M;
    if (a.frame == "gauged")
        M = monodromy_loop(conn, build_gauge(p), loop, copts);
    else if (a.frame == "phi")
        M = monodromy_loop(conn, loop, copts);
    else
        throw config_error("--frame must be phi or gauged");

    json j;
    j["frame"] = a.frame;
    j["basepoint"] = point_to_json(loop.start());
    j["basis"] = basis_names(conn.basis);
    j["matrix"] = matrix_to_json(M);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    j["eigenvalues"] = vector_to_json_values(es.eigenvalues());
    emit(j, a.output, out);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pfaffian system of the Lauricella F_A hypergeometric function"};
    app.name("lfa");

    MatrixArgs ma;
    EvalArgs ea;
    VerifyArgs va;
    ContinueArgs ca;
    MonodromyArgs oa;

    auto* matrix = app.add_subcommand("matrix", "print system matrices as JSON");
    matrix->add_option("--params", ma.params_file, "parameter JSON file")->required();
    matrix->add_option("--what", ma.what, "C|phipsi|psipsi|R0k|RV|P|Pinv|omega")
        ->required()
        ->check(CLI::IsMember({"C", "phipsi", "psipsi", "R0k", "RV", "P", "Pinv", "omega"}));
    matrix->add_option("--k", ma.k, "coordinate for R0k, 1-based");
    matrix->add_option("--v", ma.v_text, "mask for RV, e.g. 101 or 1,0,1");
    matrix->add_option("--at", ma.at_text, "evaluation point for omega (JSON)");
    matrix->add_option("--frame", ma.frame, "omega frame: phi|gauged");
    matrix->add_option("--output", ma.output, "write JSON here instead of stdout");

    auto* eval = app.add_subcommand("eval", "evaluate the truncated series");
    eval->add_option("--params", ea.params_file, "parameter JSON file")->required();
    eval->add_option("--at", ea.at_text, "point (JSON number or array)")->required();
    eval->add_option("--deriv", ea.deriv_text, "1-based derivative coordinates, e.g. 1,2");
    eval->add_option("--N", ea.degree, "total-degree truncation");
    eval->add_option("--tail-tol", ea.tail_tol, "tail tolerance for the convergence flag");
    eval->add_flag("--vector", ea.vector, "emit the full solution column");
    eval->add_option("--output", ea.output, "write JSON here instead of stdout");

    auto* verify = app.add_subcommand("verify", "run the internal consistency battery");
    verify->add_option("--params", va.params_file, "parameter JSON file")->required();
    verify->add_option("--seed", va.seed, "RNG seed for sampled points");
    verify->add_flag("--strict", va.strict, "fail when the genericity check reports issues");
    verify->add_option("--flat-points", va.flat_points, "points for the flatness check");
    verify->add_option("--pfaff-points", va.pfaff_points, "points for the series check");
    verify->add_option("--N", va.degree, "series truncation for the series check");
    verify->add_option("--output", va.output, "write JSON here instead of stdout");

    auto* cont = app.add_subcommand("continue", "integrate the system along a path");
    cont->add_option("--params", ca.params_file, "parameter JSON file")->required();
    cont->add_option("--path", ca.path_file, "path JSON file")->required();
    cont->add_flag("--from-series", ca.from_series, "seed with the series at the path start");
    cont->add_option("--initial", ca.initial_file, "JSON vector used as the initial value");
    cont->add_option("--tol", ca.tol, "local error tolerance");
    cont->add_option("--clearance", ca.clearance, "abort distance to the singular locus");
    cont->add_option("--N", ca.degree, "series truncation for --from-series");
    cont->add_option("--frame", ca.frame, "gauged|phi");
    cont->add_option("--output", ca.output, "write JSON here instead of stdout");

    auto* mono = app.add_subcommand("monodromy", "fundamental matrix around a closed loop");
    mono->add_option("--params", oa.params_file, "parameter JSON file")->required();
    mono->add_option("--loop", oa.loop_file, "closed path JSON file")->required();
    mono->add_option("--tol", oa.tol, "local error tolerance");
    mono->add_option("--clearance", oa.clearance, "abort distance to the singular locus");
    mono->add_option("--frame", oa.frame, "gauged|phi");
    mono->add_option("--output", oa.output, "write JSON here instead of stdout");

    app.require_subcommand(1);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("lfa");
    for (const auto& s : args) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help() << "\n";
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (matrix->parsed()) return do_matrix(ma, out);
        if (eval->parsed()) return do_eval(ea, out);
        if (verify->parsed()) return do_verify(va, out);
        if (cont->parsed()) return do_continue(ca, out);
        if (mono->parsed()) return do_monodromy(oa, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const config_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace lfa
