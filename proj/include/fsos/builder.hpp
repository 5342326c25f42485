#pragma once

// End-to-end certificate construction: minimax polynomial of the shifted
// objective, rho-truncated support selection, Gram feasibility solve, rational
// rounding, and exact revalidation. Never returns an unvalidated certificate.

#include <chrono>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsos/approx.hpp"
#include "fsos/certificate.hpp"
#include "fsos/charfn.hpp"
#include "fsos/cnf.hpp"
#include "fsos/common.hpp"
#include "fsos/gram.hpp"
#include "fsos/minimax.hpp"
#include "fsos/poly.hpp"
#include "fsos/solve.hpp"
#include "fsos/validate.hpp"

namespace fsos {

struct BuildAttempt {
    int d = 0;
    Rational rho = 0;
    double residual = 0;
    std::string note;
};

class BuildFailure : public std::runtime_error {
  public:
    std::vector<BuildAttempt> attempts;
    BuildFailure(const std::string& msg, std::vector<BuildAttempt> a)
        : std::runtime_error(msg), attempts(std::move(a)) {}
};

inline std::vector<Rational> default_rho_schedule() {
    return {Rational(1, 3), Rational(1, 2), Rational(2, 3),
            Rational(3, 4), Rational(4, 5), Rational(1)};
}

struct BuildConfig {
    int d_max = 6;
    std::vector<Rational> rho_schedule = default_rho_schedule();
    SolverConfig solver;
    long time_budget_ms = 600000;  // 0 disables the budget
    bool use_oracle = true;
    int oracle_limit = -1;
    int digits = kCoeffDigits;
};

inline std::string rational_str(const Rational& r) {
    std::string s = r.get_num().get_str();
    if (r.get_den() != 1) s += "/" + r.get_den().get_str();
    return s;
}

namespace builder_detail {

inline Certificate skeleton(const CnfFormula& phi, const Objective& obj) {
    Certificate cert;
    cert.mode = obj.mode;
    cert.L = obj.L;
    cert.n = phi.n;
    cert.formula_digest = formula_digest(phi);
    return cert;
}

inline Certificate build_impl(const CnfFormula& phi, Mode mode, std::optional<long> L_opt,
                              const BuildConfig& cfg, bool polynomial) {
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&t0] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    };

    Objective obj = objective(phi, mode, L_opt, cfg.use_oracle, cfg.oracle_limit);
    const MultilinearPoly<Rational>& f = obj.f;
    std::vector<BuildAttempt> attempts;

    if (f.degree() == 0) {
        Rational c = f.constant();
        if (c < 0) throw BuildFailure("shifted objective is a negative constant", attempts);
        Certificate cert = skeleton(phi, obj);
        CertPart g;
        g.support.push_back({});
        g.coeffs.push_back(decimal_string(std::sqrt(to_double(c)), cfg.digits));
        cert.numerators.push_back(g);
        cert.rho = "1";
        cert.s_size = 1;
        ValidationReport rep = validate_l1(phi, cert);
        if (!rep.accepted)
            throw BuildFailure("constant certificate failed exact revalidation", attempts);
        cert.exact_residual = decimal_string(to_double(rep.residual));
        cert.build_time_ms = elapsed_ms();
        return cert;
    }

    std::vector<Rational> points = half_integer_points(obj.range_hi);
    MultilinearPoly<double> f_dbl = to_double_poly(f);
    const Rational success_bar = Rational(1, 2) - Rational(1, 200);

    int d_hi = std::min<int>(cfg.d_max, static_cast<int>(points.size()) - 1);
    for (int d = 1; d <= d_hi; ++d) {
        MinimaxResult mm = minimax_sqrt_at_points(points, d);
        MultilinearPoly<double> pf = compose(mm.poly, f_dbl);
        for (const Rational& rho : cfg.rho_schedule) {
            if (cfg.time_budget_ms > 0 && elapsed_ms() > cfg.time_budget_ms) {
                attempts.push_back({d, rho, 0, "time budget exhausted before solve"});
                throw BuildFailure("time budget exhausted", attempts);
            }
            MultilinearPoly<double> trunc = rho_truncate(pf, rho);
            std::vector<Monomial> s_set, t_set;
            if (polynomial) {
                for (auto& [m, c] : trunc.terms) s_set.push_back(m);
            } else {
                std::set<Monomial, MonomialLess> acc;
                for (auto& [t, ct] : trunc.terms)
                    for (auto& [a, ca] : f.terms) acc.insert(t ^ a);
                s_set.assign(acc.begin(), acc.end());
                for (auto& [m, c] : trunc.terms) t_set.push_back(m);
            }
            GramProblem prob = assemble(
                f_dbl, s_set, t_set,
                polynomial ? GramMode::MIN_L1_POLY : GramMode::FEASIBILITY_RATIONAL);
            SolverConfig scfg = cfg.solver;
            if (cfg.time_budget_ms > 0)
                scfg.time_budget_ms = std::max<long>(1, cfg.time_budget_ms - elapsed_ms());
            SolveOutcome out = solve(prob, scfg);
            attempts.push_back({d, rho, out.best_residual, ""});
            if (!out.found || !(out.best_residual < 0.5 - scfg.safety)) continue;

            try {
                std::vector<MultilinearPoly<double>> gs = psd_extract(out.sol.U, prob.S);
                std::vector<MultilinearPoly<double>> hs;
                if (!polynomial) hs = psd_extract(out.sol.V, prob.T);
                Certificate cert = skeleton(phi, obj);
                for (const auto& g : gs) cert.numerators.push_back(part_from_poly(g, cfg.digits));
                for (const auto& h : hs)
                    cert.denominators.push_back(part_from_poly(h, cfg.digits));
                cert.d = d;
                cert.rho = rational_str(rho);
                cert.s_size = static_cast<long>(prob.S.size());
                cert.t_size = polynomial ? 0 : static_cast<long>(prob.T.size());
                cert.solver_residual = out.best_residual;
                ValidationReport rep = validate_l1(phi, cert);
                if (rep.accepted && rep.residual < success_bar) {
                    cert.exact_residual = decimal_string(to_double(rep.residual));
                    cert.build_time_ms = elapsed_ms();
                    return cert;
                }
                attempts.back().note = "rounded certificate failed exact revalidation";
            } catch (const std::exception& e) {
                attempts.back().note = std::string("extraction failed: ") + e.what();
            }
        }
    }
    throw BuildFailure("no (d, rho) attempt reached the residual target", attempts);
}

}  // namespace builder_detail

inline Certificate build(const CnfFormula& phi, Mode mode,
                         std::optional<long> L = std::nullopt, const BuildConfig& cfg = {}) {
    return builder_detail::build_impl(phi, mode, L, cfg, false);
}

inline Certificate build_polynomial(const CnfFormula& phi, Mode mode,
                                    std::optional<long> L = std::nullopt,
                                    const BuildConfig& cfg = {}) {
    return builder_detail::build_impl(phi, mode, L, cfg, true);
}

}  // namespace fsos
