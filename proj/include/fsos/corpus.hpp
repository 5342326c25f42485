#pragma once

// Random instance generation and the desk-scale experiment harness.
//
// The PRNG is splitmix64 (Steele-Lea-Burke): a documented, stable 64-bit
// generator so corpora reproduce bit-for-bit across platforms. Instances are
// drawn as i.i.d. clauses (k distinct variables, uniform signs), deduplicated
// keeping first occurrences, and optionally resampled until unsatisfiable.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fsos/builder.hpp"
#include "fsos/charfn.hpp"
#include "fsos/cnf.hpp"
#include "fsos/common.hpp"
#include "fsos/gram.hpp"
#include "fsos/minimax.hpp"
#include "fsos/oracle.hpp"
#include "fsos/solve.hpp"
#include "fsos/validate.hpp"

namespace fsos {

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Modulo map; the bias is ~2^-60 for the ranges used here.
    uint64_t below(uint64_t bound) { return next() % bound; }
};

struct StructuredSpec {
    long m1 = 0, m2 = 0, m3 = 0;
    int kappa = 1;
};

struct GenSpec {
    int k = 3;
    int n = 10;
    long m = 0;  // 0 means the default 3kn
    uint64_t seed = 1;
    bool require_unsat = false;
    std::optional<StructuredSpec> structured;
};

namespace corpus_detail {

inline Clause draw_clause(SplitMix64& rng, int width, int var_lo, int var_hi) {
    if (var_hi - var_lo + 1 < width)
        throw std::invalid_argument("variable range narrower than clause width");
    std::vector<int> vars;
    while (static_cast<int>(vars.size()) < width) {
        int v = var_lo + static_cast<int>(rng.below(static_cast<uint64_t>(var_hi - var_lo + 1)));
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    Clause c;
    for (int v : vars) c.literals.push_back({v, (rng.next() & 1) != 0});
    canonicalize_clause(c);  // distinct variables, so never a tautology
    return c;
}

inline std::vector<Clause> dedup_keep_first(const std::vector<Clause>& raw) {
    std::vector<Clause> out;
    std::set<std::vector<int>> seen;
    for (const Clause& c : raw) {
        std::vector<int> key;
        for (const Literal& l : c.literals) key.push_back(l.code());
        if (seen.insert(key).second) out.push_back(c);
    }
    return out;
}

}  // namespace corpus_detail

inline CnfFormula gen_random(const GenSpec& spec) {
    if (spec.n < 1 || spec.n > kMaxVars) throw std::invalid_argument("bad variable count");
    SplitMix64 rng(spec.seed);
    const long attempts_cap = 100000;
    for (long attempt = 0; attempt < attempts_cap; ++attempt) {
        std::vector<Clause> raw;
        if (spec.structured) {
            const StructuredSpec& st = *spec.structured;
            if (st.kappa < 1 || st.kappa > spec.n) throw std::invalid_argument("kappa out of range");
            int upper3 = std::min(spec.n, 18);
            for (long i = 0; i < st.m1; ++i)
                raw.push_back(corpus_detail::draw_clause(rng, 1, st.kappa, spec.n));
            for (long i = 0; i < st.m2; ++i)
                raw.push_back(corpus_detail::draw_clause(rng, 2, st.kappa, spec.n));
            for (long i = 0; i < st.m3; ++i)
                raw.push_back(corpus_detail::draw_clause(rng, 3, 1, upper3));
        } else {
            if (spec.m < 0) throw std::invalid_argument("clause target must not be negative");
            long target = spec.m > 0 ? spec.m : 3L * spec.k * spec.n;
            for (long i = 0; i < target; ++i)
                raw.push_back(corpus_detail::draw_clause(rng, spec.k, 1, spec.n));
        }
        CnfFormula phi;
        phi.n = spec.n;
        phi.clauses = corpus_detail::dedup_keep_first(raw);
        if (!spec.require_unsat) return phi;
        OracleResult ob = oracle_bounds(phi);
        if (ob.l_min >= 1) return phi;
    }
    throw std::runtime_error("could not draw an unsatisfiable formula within the resample cap");
}

// --- experiment harness ------------------------------------------------------

enum class ExperimentTable { T2, T3, T4, T5 };

struct ExperimentConfig {
    ExperimentTable table = ExperimentTable::T2;
    int k = 3;
    int n = 10;
    int instances = 10;
    uint64_t seed0 = 1;
    long budget_ms = 600000;
    StructuredSpec structured;  // used by T4
    int threads = 0;            // 0 means FSOS_THREADS or hardware
    int t5_max_iters = 4000;    // solver cap per bisection probe
};

struct ExperimentRow {
    int id = 0;
    int k = 0, n = 0;
    long m = 0;
    long supp_size = 0;
    std::string rho;
    int d = 0;
    long wall_ms = 0;
    bool accepted = false;
    std::string residual;
    long l = -1;  // minimal-support statistic; -1 when not applicable
};

namespace corpus_detail {

inline std::string csv_line(const ExperimentRow& r) {
    std::ostringstream os;
    os << r.id << "," << r.k << "," << r.n << "," << r.m << "," << r.supp_size << "," << r.rho
       << "," << (r.d > 0 ? std::to_string(r.d) : std::string()) << "," << r.wall_ms << ","
       << (r.accepted ? 1 : 0) << "," << r.residual << ","
       << (r.l >= 0 ? std::to_string(r.l) : std::string()) << "\n";
    return os.str();
}

inline double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0;
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double median_of(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2;
}

inline long wall_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

// One polynomial build + independent revalidation; shared by T2/T3/T4 rows.
inline ExperimentRow build_row(const CnfFormula& phi, int id, int k,
                               const std::vector<Rational>& schedule, long budget_ms) {
    ExperimentRow row;
    row.id = id;
    row.k = k;
    row.n = phi.n;
    row.m = phi.m();
    auto t0 = std::chrono::steady_clock::now();
    try {
        row.supp_size = static_cast<long>(formula_char(phi).terms.size());
        BuildConfig cfg;
        cfg.rho_schedule = schedule;
        cfg.time_budget_ms = budget_ms;
        Certificate cert = build_polynomial(phi, Mode::MAXSAT, std::nullopt, cfg);
        ValidationReport rep = validate_l1(phi, cert);  // accepted flag re-derived, not trusted
        row.accepted = rep.accepted;
        row.residual = decimal_string(to_double(rep.residual));
        row.rho = cert.rho;
        row.d = cert.d;
    } catch (const BuildFailure& e) {
        row.accepted = false;
        double best = 0;
        if (!e.attempts.empty()) {
            best = e.attempts.front().residual;
            for (const BuildAttempt& a : e.attempts) best = std::min(best, a.residual);
            row.rho = rational_str(e.attempts.back().rho);
            row.d = e.attempts.back().d;
        }
        row.residual = decimal_string(best);
    }
    row.wall_ms = wall_since(t0);
    return row;
}

inline std::vector<std::pair<Monomial, double>> terms_by_magnitude(
    const MultilinearPoly<double>& p) {
    std::vector<std::pair<Monomial, double>> v(p.terms.begin(), p.terms.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        double ma = std::fabs(a.second), mb = std::fabs(b.second);
        if (ma != mb) return ma > mb;
        return canonical_less(a.first, b.first);
    });
    return v;
}

// Minimal-support statistic: least prefix length of p_d(f)'s terms (by falling
// coefficient magnitude) whose span admits a sum of squares within 1/2 of f in
// the coefficient l1 norm. Monotone in the prefix length, so bisection applies.
inline std::vector<ExperimentRow> t5_rows(const CnfFormula& phi, int id, int k, int max_iters,
                                          int d_hi = 2) {
    std::vector<ExperimentRow> rows;
    Objective obj = objective(phi, Mode::MAXSAT, std::nullopt, true);
    MultilinearPoly<double> f_dbl = to_double_poly(obj.f);
    std::vector<Rational> points = half_integer_points(obj.range_hi);
    for (int d = 1; d <= d_hi; ++d) {
        ExperimentRow row;
        row.id = id;
        row.k = k;
        row.n = phi.n;
        row.m = phi.m();
        row.supp_size = static_cast<long>(obj.f.terms.size());
        row.d = d;
        auto t0 = std::chrono::steady_clock::now();
        if (static_cast<int>(points.size()) < d + 1) {
            rows.push_back(row);
            continue;
        }
        MinimaxResult mm = minimax_sqrt_at_points(points, d);
        MultilinearPoly<double> pf = compose(mm.poly, f_dbl);
        auto ordered = terms_by_magnitude(pf);
        SolverConfig scfg;
        scfg.max_iters = max_iters;
        auto probe = [&](long s) {
            std::vector<Monomial> support;
            for (long i = 0; i < s; ++i) support.push_back(ordered[static_cast<size_t>(i)].first);
            GramProblem prob = assemble(f_dbl, support, {}, GramMode::MIN_L1_POLY);
            SolveOutcome out = solve(prob, scfg);
            return std::pair<bool, double>(out.best_residual < 0.5, out.best_residual);
        };
        long lo = 1, hi = static_cast<long>(ordered.size());
        auto [top_ok, top_res] = probe(hi);
        if (!top_ok) {
            row.residual = decimal_string(top_res);
            row.wall_ms = wall_since(t0);
            rows.push_back(row);
            continue;
        }
        double res_at_l = top_res;
        while (lo < hi) {
            long mid = lo + (hi - lo) / 2;
            auto [ok, res] = probe(mid);
            if (ok) {
                hi = mid;
                res_at_l = res;
            } else {
                lo = mid + 1;
            }
        }
        row.l = hi;
        row.accepted = true;
        row.residual = decimal_string(res_at_l);
        row.wall_ms = wall_since(t0);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace corpus_detail

inline std::string run_experiment(const ExperimentConfig& cfg) {
    using corpus_detail::build_row;
    using corpus_detail::t5_rows;

    std::vector<std::vector<ExperimentRow>> per_instance(
        static_cast<size_t>(std::max(cfg.instances, 0)));
    std::atomic<int> cursor{0};
    auto work = [&] {
        for (;;) {
            int i = cursor.fetch_add(1);
            if (i >= cfg.instances) return;
            GenSpec gs;
            gs.k = cfg.k;
            gs.n = cfg.n;
            gs.seed = cfg.seed0 + static_cast<uint64_t>(i);
            gs.require_unsat = true;
            if (cfg.table == ExperimentTable::T4) gs.structured = cfg.structured;
            CnfFormula phi = gen_random(gs);
            std::vector<ExperimentRow> rows;
            switch (cfg.table) {
                case ExperimentTable::T2:
                case ExperimentTable::T4:
                    rows.push_back(build_row(phi, i, cfg.k, default_rho_schedule(), cfg.budget_ms));
                    break;
                case ExperimentTable::T3:
                    for (const Rational& rho :
                         {Rational(1, 2), Rational(2, 3), Rational(3, 4), Rational(4, 5),
                          Rational(1)}) {
                        ExperimentRow row = build_row(phi, i, cfg.k, {rho}, cfg.budget_ms);
                        row.rho = rational_str(rho);
                        row.d = 1;
                        rows.push_back(row);
                    }
                    break;
                case ExperimentTable::T5:
                    rows = t5_rows(phi, i, cfg.k, cfg.t5_max_iters);
                    break;
            }
            per_instance[static_cast<size_t>(i)] = std::move(rows);
        }
    };
    int workers = cfg.threads > 0 ? cfg.threads : env_threads();
    if (workers < 1) workers = 1;
    workers = std::min<int>(workers, std::max(cfg.instances, 1));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::string csv = "id,k,n,m,supp_size,rho,d,wall_ms,accepted,residual,l\n";
    std::vector<double> walls, l1s, l2s;
    long accepted_total = 0, row_total = 0;
    for (const auto& rows : per_instance)
        for (const ExperimentRow& r : rows) {
            csv += corpus_detail::csv_line(r);
            walls.push_back(static_cast<double>(r.wall_ms));
            accepted_total += r.accepted ? 1 : 0;
            ++row_total;
            if (cfg.table == ExperimentTable::T5 && r.l >= 0)
                (r.d == 1 ? l1s : l2s).push_back(static_cast<double>(r.l));
        }
    std::ostringstream agg;
    agg.setf(std::ios::fixed);
    agg.precision(2);
    agg << "# aggregate accepted=" << accepted_total << "/" << row_total
        << " mean_wall_ms=" << corpus_detail::mean_of(walls)
        << " median_wall_ms=" << corpus_detail::median_of(walls) << "\n";
    if (cfg.table == ExperimentTable::T5) {
        double m1 = corpus_detail::mean_of(l1s), m2 = corpus_detail::mean_of(l2s);
        agg << "# aggregate mean_l_d1=" << m1 << " median_l_d1="
            << corpus_detail::median_of(l1s) << " mean_l_d2=" << m2
            << " median_l_d2=" << corpus_detail::median_of(l2s)
            << " decrease_rate=" << (m1 > 0 ? (m1 - m2) / m1 : 0) << "\n";
    }
    return csv + agg.str();
}

}  // namespace fsos
