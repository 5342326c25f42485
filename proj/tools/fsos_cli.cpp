// Command-line front end: build/validate certificates, run the brute-force
// oracle, generate corpora, run benches, and export SDPA problem files.
//
// Exit codes: 0 success/accept, 1 build or input failure, 2 certificate
// rejected, 3 method inapplicable, 64 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fsos/builder.hpp"
#include "fsos/certificate.hpp"
#include "fsos/charfn.hpp"
#include "fsos/cnf.hpp"
#include "fsos/common.hpp"
#include "fsos/corpus.hpp"
#include "fsos/gram.hpp"
#include "fsos/oracle.hpp"
#include "fsos/validate.hpp"

namespace {

using namespace fsos;

CnfFormula load_formula(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        text = read_file(path);
    }
    CnfFormula phi = parse_dimacs(text);
    for (const std::string& w : phi.warnings) std::cerr << "warning: " << w << "\n";
    return phi;
}

void emit(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-")
        std::cout << bytes;
    else
        write_file_atomic(path, bytes);
}

Rational parse_rho(const std::string& s) {
    Rational r;
    if (s.find('/') == std::string::npos) {
        r = rational_from_decimal(s);
    } else {
        r = Rational(s);
        r.canonicalize();
    }
    if (r <= 0 || r > 1) throw std::invalid_argument("rho must lie in (0,1]: " + s);
    return r;
}

std::string witness_bits(const std::vector<bool>& w) {
    std::string s;
    for (bool b : w) s += b ? '1' : '0';
    return s;
}

struct CommonBuildFlags {
    std::string mode_name = "maxsat";
    std::optional<long> level;
    bool auto_level = false;
    bool no_oracle = false;
    bool polynomial = false;
    std::vector<std::string> rhos;
    int d_max = 6;
    long budget_ms = 600000;
    double safety = kSolverSafety;
    int oracle_limit = -1;
    int threads = 0;
};

void add_build_flags(CLI::App* cmd, CommonBuildFlags& fl, bool with_schedule) {
    cmd->add_option("--mode", fl.mode_name, "objective mode: maxsat|unsat|minsat|sat")
        ->check(CLI::IsMember({"maxsat", "unsat", "minsat", "sat"}));
    auto* lopt = cmd->add_option_function<long>(
        "--L", [&fl](long v) { fl.level = v; }, "claimed falsified-clause level");
    cmd->add_flag("--auto-L", fl.auto_level, "derive L from the oracle (default)")
        ->excludes(lopt);
    cmd->add_flag("--no-oracle", fl.no_oracle, "skip the brute-force oracle (requires --L)");
    if (with_schedule) {
        cmd->add_option("--rho", fl.rhos, "truncation schedule entries, e.g. 1/3 1/2 1");
        cmd->add_option("--d-max", fl.d_max, "largest approximation degree to try");
        cmd->add_option("--budget-ms", fl.budget_ms, "wall-clock budget in milliseconds");
        cmd->add_option("--safety", fl.safety, "solver residual safety margin below 1/2");
    }
    cmd->add_flag("--polynomial", fl.polynomial, "denominator-free certificate");
    cmd->add_option("--oracle-limit", fl.oracle_limit, "max n for the exhaustive oracle");
    cmd->add_option("--threads", fl.threads, "worker thread budget (0 = auto)");
}

void apply_thread_budget(int threads) {
    if (threads > 0) setenv("FSOS_THREADS", std::to_string(threads).c_str(), 1);
}

BuildConfig to_config(const CommonBuildFlags& fl) {
    BuildConfig cfg;
    cfg.d_max = fl.d_max;
    cfg.time_budget_ms = fl.budget_ms;
    cfg.solver.safety = fl.safety;
    cfg.use_oracle = !fl.no_oracle;
    cfg.oracle_limit = fl.oracle_limit;
    if (!fl.rhos.empty()) {
        cfg.rho_schedule.clear();
        for (const std::string& s : fl.rhos) cfg.rho_schedule.push_back(parse_rho(s));
    }
    return cfg;
}

int cmd_build(const std::string& input, const std::string& output, const CommonBuildFlags& fl) {
    apply_thread_budget(fl.threads);
    CnfFormula phi = load_formula(input);
    BuildConfig cfg = to_config(fl);
    Mode mode = mode_from_name(fl.mode_name);
    Certificate cert = fl.polynomial ? build_polynomial(phi, mode, fl.level, cfg)
                                     : build(phi, mode, fl.level, cfg);
    std::string json = serialize(cert);
    if (output.empty() || output == "-") {
        std::cout << json;
    } else {
        write_file_atomic(output, json);
        write_file_atomic(output + ".txt", render_human(cert));
        std::cout << "certificate written to " << output << " (exact l1 residual "
                  << cert.exact_residual << ")\n";
    }
    return 0;
}

int cmd_validate(const std::string& cert_path, const std::string& formula_path,
                 const std::string& method, int threads) {
    apply_thread_budget(threads);
    CnfFormula phi = load_formula(formula_path);
    Certificate cert = deserialize(read_file(cert_path));
    ValidationReport rep;
    if (method == "l1")
        rep = validate_l1(phi, cert);
    else if (method == "sampling")
        rep = validate_sampling(phi, cert);
    else
        rep = validate_exhaustive(phi, cert);
    std::cout << report_to_json(rep).dump(2) << "\n";
    if (rep.accepted) return 0;
    return rep.status == ValidationStatus::INAPPLICABLE ? 3 : 2;
}

int cmd_oracle(const std::string& input, int limit, int threads) {
    apply_thread_budget(threads);
    CnfFormula phi = load_formula(input);
    OracleResult r;
    try {
        r = oracle_bounds(phi, limit);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    std::cout << "L_min=" << r.l_min << "\n"
              << "L_max=" << r.l_max << "\n"
              << "witness_min=" << witness_bits(r.witness_min) << "\n"
              << "witness_max=" << witness_bits(r.witness_max) << "\n";
    return 0;
}

int cmd_gen(const GenSpec& spec, const std::string& structured, const std::string& output) {
    GenSpec gs = spec;
    if (!structured.empty()) {
        StructuredSpec st;
        char comma;
        std::istringstream in(structured);
        if (!(in >> st.m1 >> comma >> st.m2 >> comma >> st.m3 >> comma >> st.kappa))
            throw CLI::ValidationError("--structured expects m1,m2,m3,kappa");
        gs.structured = st;
    }
    CnfFormula phi = gen_random(gs);
    std::string body = "c seed " + std::to_string(gs.seed) + "\n" + canonical_dimacs(phi);
    emit(output, body);
    return 0;
}

ExperimentTable table_from_name(const std::string& s) {
    if (s == "t2") return ExperimentTable::T2;
    if (s == "t3") return ExperimentTable::T3;
    if (s == "t4") return ExperimentTable::T4;
    return ExperimentTable::T5;
}

int cmd_bench(const ExperimentConfig& cfg, const std::string& table,
              const std::string& structured, const std::string& output) {
    ExperimentConfig ec = cfg;
    ec.table = table_from_name(table);
    if (!structured.empty()) {
        char comma;
        std::istringstream in(structured);
        if (!(in >> ec.structured.m1 >> comma >> ec.structured.m2 >> comma >> ec.structured.m3 >>
              comma >> ec.structured.kappa))
            throw CLI::ValidationError("--structured expects m1,m2,m3,kappa");
    }
    emit(output, run_experiment(ec));
    return 0;
}

int cmd_export_sdpa(const std::string& input, const std::string& output,
                    const CommonBuildFlags& fl, int d, const std::string& rho_s) {
    apply_thread_budget(fl.threads);
    CnfFormula phi = load_formula(input);
    Mode mode = mode_from_name(fl.mode_name);
    Objective obj = objective(phi, mode, fl.level, !fl.no_oracle, fl.oracle_limit);
    std::vector<Rational> points = half_integer_points(obj.range_hi);
    if (static_cast<int>(points.size()) < d + 1)
        throw std::runtime_error("not enough interpolation points for degree " +
                                 std::to_string(d));
    MultilinearPoly<double> f_dbl = to_double_poly(obj.f);
    MinimaxResult mm = minimax_sqrt_at_points(points, d);
    MultilinearPoly<double> trunc = rho_truncate(compose(mm.poly, f_dbl), parse_rho(rho_s));
    std::vector<Monomial> s_set, t_set;
    if (fl.polynomial) {
        for (auto& [m, c] : trunc.terms) s_set.push_back(m);
    } else {
        std::set<Monomial, MonomialLess> acc;
        for (auto& [t, ct] : trunc.terms)
            for (auto& [a, ca] : obj.f.terms) acc.insert(t ^ a);
        s_set.assign(acc.begin(), acc.end());
        for (auto& [m, c] : trunc.terms) t_set.push_back(m);
    }
    GramProblem prob = assemble(f_dbl, s_set, t_set,
                                fl.polynomial ? GramMode::MIN_L1_POLY
                                              : GramMode::FEASIBILITY_RATIONAL);
    emit(output, export_sdpa(prob));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier sum-of-squares certificates for CNF optimization"};
    app.require_subcommand(1);

    // build
    auto* build_cmd = app.add_subcommand("build", "construct and validate a certificate");
    std::string b_in = "-", b_out;
    CommonBuildFlags b_fl;
    build_cmd->add_option("input", b_in, "DIMACS file, or - for stdin");
    build_cmd->add_option("-o,--output", b_out, "certificate JSON path");
    add_build_flags(build_cmd, b_fl, true);

    // validate
    auto* val_cmd = app.add_subcommand("validate", "check a certificate against a formula");
    std::string v_cert, v_formula, v_method = "l1";
    int v_threads = 0;
    val_cmd->add_option("certificate", v_cert, "certificate JSON path")->required();
    val_cmd->add_option("formula", v_formula, "DIMACS file, or - for stdin")->required();
    val_cmd->add_option("--method", v_method, "l1|sampling|exhaustive")
        ->check(CLI::IsMember({"l1", "sampling", "exhaustive"}));
    val_cmd->add_option("--threads", v_threads, "worker thread budget (0 = auto)");

    // oracle
    auto* or_cmd = app.add_subcommand("oracle", "brute-force falsified-clause bounds");
    std::string o_in = "-";
    int o_limit = -1, o_threads = 0;
    or_cmd->add_option("input", o_in, "DIMACS file, or - for stdin");
    or_cmd->add_option("--limit", o_limit, "max n for exhaustive enumeration");
    or_cmd->add_option("--threads", o_threads, "worker thread budget (0 = auto)");

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate a random CNF formula");
    GenSpec g_spec;
    std::string g_structured, g_out;
    gen_cmd->add_option("-k,--width", g_spec.k, "literals per clause");
    gen_cmd->add_option("-n,--vars", g_spec.n, "variable count");
    gen_cmd->add_option("-m,--clauses", g_spec.m, "clause draws (0 = 3kn)");
    gen_cmd->add_option("--seed", g_spec.seed, "PRNG seed");
    gen_cmd->add_flag("--unsat", g_spec.require_unsat, "resample until unsatisfiable");
    gen_cmd->add_option("--structured", g_structured, "m1,m2,m3,kappa mixed-width recipe");
    gen_cmd->add_option("-o,--output", g_out, "output path (default stdout)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run an experiment table, emit CSV");
    ExperimentConfig bench_cfg;
    std::string bench_table = "t2", bench_structured, bench_out;
    bench_cmd->add_option("--table", bench_table, "t2|t3|t4|t5")
        ->check(CLI::IsMember({"t2", "t3", "t4", "t5"}));
    bench_cmd->add_option("-k,--width", bench_cfg.k, "literals per clause");
    bench_cmd->add_option("-n,--vars", bench_cfg.n, "variable count");
    bench_cmd->add_option("--instances", bench_cfg.instances, "instance count");
    bench_cmd->add_option("--seed", bench_cfg.seed0, "base PRNG seed");
    bench_cmd->add_option("--budget-ms", bench_cfg.budget_ms, "per-instance budget");
    bench_cmd->add_option("--threads", bench_cfg.threads, "work pool size (0 = auto)");
    bench_cmd->add_option("--structured", bench_structured, "m1,m2,m3,kappa for t4");
    bench_cmd->add_option("-o,--output", bench_out, "CSV path (default stdout)");

    // export-sdpa
    auto* exp_cmd = app.add_subcommand("export-sdpa", "write the Gram problem in SDPA format");
    std::string e_in = "-", e_out, e_rho = "1/2";
    int e_d = 1;
    CommonBuildFlags e_fl;
    exp_cmd->add_option("input", e_in, "DIMACS file, or - for stdin");
    exp_cmd->add_option("-o,--output", e_out, "output .dat-s path (default stdout)");
    exp_cmd->add_option("-d,--degree", e_d, "approximation degree");
    exp_cmd->add_option("--rho", e_rho, "truncation parameter");
    add_build_flags(exp_cmd, e_fl, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (build_cmd->parsed()) return cmd_build(b_in, b_out, b_fl);
        if (val_cmd->parsed()) return cmd_validate(v_cert, v_formula, v_method, v_threads);
        if (or_cmd->parsed()) return cmd_oracle(o_in, o_limit, o_threads);
        if (gen_cmd->parsed()) return cmd_gen(g_spec, g_structured, g_out);
        if (bench_cmd->parsed())
            return cmd_bench(bench_cfg, bench_table, bench_structured, bench_out);
        if (exp_cmd->parsed()) return cmd_export_sdpa(e_in, e_out, e_fl, e_d, e_rho);
    } catch (const BuildFailure& e) {
        std::cerr << "build failed: " << e.what() << "\n";
        for (const BuildAttempt& a : e.attempts)
            std::cerr << "  attempt d=" << a.d << " rho=" << rational_str(a.rho)
                      << " residual=" << a.residual << (a.note.empty() ? "" : " (" + a.note + ")")
                      << "\n";
        return 1;
    } catch (const ObjectiveRefusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 64;
}
