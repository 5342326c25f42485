#pragma once

// Modified characteristic functions: f_c is the exact 0/1 indicator of the
// single falsifying pattern of clause c, f_phi = sum_i f_{c_i} counts
// falsified clauses. The mode-dependent objective is the function a
// certificate must prove nonnegative.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsos/cnf.hpp"
#include "fsos/common.hpp"
#include "fsos/oracle.hpp"
#include "fsos/poly.hpp"

namespace fsos {

enum class Mode { MAXSAT, SAT, UNSAT, MINSAT };

inline std::string mode_name(Mode m) {
    switch (m) {
        case Mode::MAXSAT: return "maxsat";
        case Mode::SAT: return "sat";
        case Mode::UNSAT: return "unsat";
        case Mode::MINSAT: return "minsat";
    }
    return "?";
}

inline Mode mode_from_name(const std::string& s) {
    if (s == "maxsat") return Mode::MAXSAT;
    if (s == "sat") return Mode::SAT;
    if (s == "unsat") return Mode::UNSAT;
    if (s == "minsat") return Mode::MINSAT;
    throw std::invalid_argument("unknown mode: " + s);
}

// f_c(y) = prod over positive literals of (1+y_i)/2 times prod over negated
// literals of (1-y_i)/2; multilinear, 2^width terms, equals 1 exactly on the
// falsifying pattern and 0 elsewhere on C_2^n.
inline MultilinearPoly<Rational> clause_char(const Clause& c, int n, long* term_ops = nullptr) {
    MultilinearPoly<Rational> p = mp_const<Rational>(n, 1);
    const Rational half(1, 2);
    for (const Literal& l : c.literals) {
        MultilinearPoly<Rational> factor(n);
        factor.add_term(Monomial(n), half);
        factor.add_term(Monomial::of(n, {l.var}), l.negated ? -half : half);
        if (term_ops) *term_ops += 2 * static_cast<long>(p.support_size());
        p = xor_mul(p, factor);
    }
    return p;
}

inline MultilinearPoly<Rational> formula_char(const CnfFormula& f, long* term_ops = nullptr) {
    MultilinearPoly<Rational> sum(f.n);
    for (const Clause& c : f.clauses) {
        MultilinearPoly<Rational> fc = clause_char(c, f.n, term_ops);
        if (term_ops) *term_ops += static_cast<long>(fc.support_size());
        sum = sum + fc;
    }
    return sum;
}

struct Objective {
    MultilinearPoly<Rational> f;  // the shifted objective the certificate approximates
    long L = 0;
    Mode mode = Mode::MAXSAT;
    Rational shift = kDelta;
    bool l_claimed = false;   // user-supplied L, not oracle-verified
    long range_hi = 0;        // image of f is within {i + 1/2 : i = 0..range_hi}
    bool oracle_used = false;
    long l_min = 0, l_max = 0;  // valid when oracle_used
};

struct ObjectiveRefusal : std::runtime_error {
    std::vector<bool> witness;
    explicit ObjectiveRefusal(const std::string& what, std::vector<bool> w)
        : std::runtime_error(what), witness(std::move(w)) {}
};

// Mode table: MAXSAT f = f_phi - L + 1/2;  UNSAT f = f_phi - 1 + 1/2;
// MINSAT f = L - f_phi + 1/2;  SAT f = -f_phi + 1/2 (L = 0; a certificate
// proves f_phi == 0, i.e. every assignment satisfies phi).
// An oracle-detected impossible bound is refused with a witness assignment.
inline Objective objective(const CnfFormula& phi, Mode mode, std::optional<long> L_opt,
                           bool use_oracle = true, int oracle_limit = -1) {
    Objective obj;
    obj.mode = mode;
    MultilinearPoly<Rational> fphi = formula_char(phi);
    OracleResult ob;
    bool have_oracle = false;
    bool need_oracle = !L_opt.has_value() && (mode == Mode::MAXSAT || mode == Mode::MINSAT);
    if (use_oracle || need_oracle) {
        int lim = oracle_limit < 0 ? env_oracle_limit() : oracle_limit;
        if (phi.n <= lim) {
            ob = oracle_bounds(phi, lim);
            have_oracle = true;
        } else if (need_oracle) {
            throw std::invalid_argument("mode needs a bound: pass L or raise the oracle limit");
        }
    }
    obj.oracle_used = have_oracle;
    if (have_oracle) {
        obj.l_min = ob.l_min;
        obj.l_max = ob.l_max;
    }
    const long m = phi.m();
    switch (mode) {
        case Mode::MAXSAT: {
            obj.L = L_opt.value_or(have_oracle ? ob.l_min : 0);
            obj.l_claimed = L_opt.has_value() && !have_oracle;
            if (have_oracle && obj.L > ob.l_min)
                throw ObjectiveRefusal("L=" + std::to_string(obj.L) + " exceeds L_min=" +
                                           std::to_string(ob.l_min) + "; no certificate exists",
                                       ob.witness_min);
            obj.f = fphi + mp_const<Rational>(phi.n, kDelta - obj.L);
            obj.range_hi = have_oracle ? ob.l_max - obj.L : m - obj.L;
            break;
        }
        case Mode::UNSAT: {
            obj.L = 1;
            if (have_oracle && ob.l_min < 1)
                throw ObjectiveRefusal("formula is satisfiable; no unsatisfiability certificate exists",
                                       ob.witness_min);
            obj.f = fphi + mp_const<Rational>(phi.n, kDelta - 1);
            obj.range_hi = have_oracle ? ob.l_max - 1 : m - 1;
            break;
        }
        case Mode::MINSAT: {
            obj.L = L_opt.value_or(have_oracle ? ob.l_max : m);
            obj.l_claimed = L_opt.has_value() && !have_oracle;
            if (have_oracle && obj.L < ob.l_max)
                throw ObjectiveRefusal("L=" + std::to_string(obj.L) + " is below L_max=" +
                                           std::to_string(ob.l_max) + "; no certificate exists",
                                       ob.witness_max);
            obj.f = mp_const<Rational>(phi.n, kDelta + obj.L) - fphi;
            obj.range_hi = have_oracle ? obj.L - ob.l_min : obj.L;
            break;
        }
        case Mode::SAT: {
            obj.L = 0;
            if (have_oracle && ob.l_max > 0)
                throw ObjectiveRefusal("some assignment falsifies a clause; validity certificate impossible",
                                       ob.witness_max);
            obj.f = mp_const<Rational>(phi.n, kDelta) - fphi;
            obj.range_hi = 0;
            break;
        }
    }
    if (obj.range_hi < 0) obj.range_hi = 0;
    return obj;
}

// Integer-valued part of the objective (f - 1/2) evaluated from exact clause
// counts; used by validators, which never trust the polynomial route alone.
inline Rational objective_int_part(Mode mode, long L, long falsified) {
    switch (mode) {
        case Mode::MAXSAT: return Rational(falsified - L);
        case Mode::UNSAT: return Rational(falsified - 1);
        case Mode::MINSAT: return Rational(L - falsified);
        case Mode::SAT: return Rational(-falsified);
    }
    return 0;
}

}  // namespace fsos
