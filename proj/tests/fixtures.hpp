#pragma once

// Shared reference corpus for the test binaries: four small formulae and the
// hand-checked certificates the validators must accept or reject. Coefficient
// strings are kept verbatim so the exact-rational residuals are reproducible.

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsos/certificate.hpp"
#include "fsos/charfn.hpp"
#include "fsos/cnf.hpp"
#include "fsos/common.hpp"

namespace fx {

using fsos::Certificate;
using fsos::CertPart;
using fsos::CnfFormula;
using fsos::Mode;
using fsos::Rational;

// x1, x2, x3, (-x1 | -x2 | -x3); L_min = 1, L_max = 3.
inline CnfFormula tri() {
    return fsos::parse_dimacs("p cnf 3 4\n1 0\n2 0\n3 0\n-1 -2 -3 0\n");
}

// x1..x4 plus the four-cycle of negated pairs; L_min = 2, L_max = 4.
inline CnfFormula ring() {
    return fsos::parse_dimacs(
        "p cnf 4 8\n1 0\n2 0\n3 0\n4 0\n-1 -2 0\n-2 -3 0\n-3 -4 0\n-1 -4 0\n");
}

// x1..x6 plus (-x1 | -x2); L_min = 1, L_max = 6.
inline CnfFormula chain() {
    return fsos::parse_dimacs("p cnf 6 7\n1 0\n2 0\n3 0\n4 0\n5 0\n6 0\n-1 -2 0\n");
}

// Weighted 4-variable 3-CNF (repetition = weight), 232 clauses; L_min = 1.
inline CnfFormula weighted() {
    struct Row {
        int mult;
        const char* clause;
    };
    static const Row rows[] = {
        {16, "-1 -2 -3 0"}, {20, "-1 -2 4 0"}, {23, "-1 -3 -4 0"}, {9, "-1 -3 4 0"},
        {23, "-2 3 -4 0"},  {17, "-2 3 4 0"},  {7, "2 3 -4 0"},    {16, "1 -2 -3 0"},
        {20, "1 -2 -4 0"},  {9, "1 -3 -4 0"},  {23, "1 -3 4 0"},   {18, "1 3 -4 0"},
        {30, "1 3 4 0"},    {1, "2 3 4 0"},
    };
    std::string text = "p cnf 4 232\n";
    for (const Row& r : rows)
        for (int i = 0; i < r.mult; ++i) text += std::string(r.clause) + "\n";
    return fsos::parse_dimacs(text);
}

using Term = std::pair<std::vector<int>, const char*>;

inline CertPart part(std::initializer_list<Term> terms) {
    CertPart p;
    for (const Term& t : terms) {
        p.support.push_back(t.first);
        p.coeffs.push_back(t.second);
    }
    return p;
}

inline Certificate cert(const CnfFormula& phi, Mode mode, long L,
                        std::vector<CertPart> gs, std::vector<CertPart> hs = {}) {
    Certificate c;
    c.mode = mode;
    c.L = L;
    c.n = phi.n;
    c.formula_digest = fsos::formula_digest(phi);
    c.numerators = std::move(gs);
    c.denominators = std::move(hs);
    c.rho = "1";
    c.s_size = static_cast<long>(c.numerators.size());
    c.t_size = static_cast<long>(c.denominators.size());
    return c;
}

// Rank-4 polynomial certificate for tri() (exact l1 residual 0.12534...).
inline Certificate tri_poly4() {
    return cert(tri(), Mode::MAXSAT, 1,
                {part({{{}, "0.6346"}, {{1}, "0.2955"}, {{2}, "0.2955"}, {{3}, "0.2955"}}),
                 part({{{1}, "0.3918"}, {{2}, "-0.0633"}, {{3}, "-0.0633"}}),
                 part({{{2}, "0.3866"}, {{3}, "-0.0746"}}),
                 part({{{3}, "0.3793"}})});
}

// Rank-4 rational certificate for tri() (l-infinity error below 1e-9).
inline Certificate tri_rat4() {
    return cert(
        tri(), Mode::MAXSAT, 1,
        {part({{{}, "1.123"}, {{1}, "0.6129"}, {{2}, "0.6129"}, {{3}, "0.6129"}}),
         part({{{1}, "0.9365"}, {{2}, "0.263"}, {{3}, "0.263"}}),
         part({{{2}, "0.8988"}, {{3}, "0.1971"}}),
         part({{{3}, "0.8769"}})},
        {part({{{}, "1.092"}, {{1}, "-0.3118"}, {{2}, "-0.3118"}, {{3}, "-0.3118"}}),
         part({{{1}, "1.065"}, {{2}, "0.2703"}, {{3}, "0.2703"}}),
         part({{{2}, "1.03"}, {{3}, "0.2085"}}),
         part({{{3}, "1.009"}})});
}

// SDP-derived rank-(4,2) rational certificate for tri().
inline Certificate tri_sdp() {
    return cert(
        tri(), Mode::MAXSAT, 1,
        {part({{{}, "1.116"}, {{1}, "0.5274"}, {{2}, "0.5274"}, {{3}, "0.5274"}}),
         part({{{1}, "0.6541"}, {{2}, "-0.0396"}, {{3}, "-0.0396"}}),
         part({{{2}, "0.6529"}, {{3}, "-0.0421"}}),
         part({{{3}, "0.6516"}})},
        {part({{{}, "1.23"}, {{1, 2, 3}, "0.1367"}}),
         part({{{1, 2, 3}, "1.223"}})});
}

// Rank-one rational certificate for tri() from the degree-2 Newman quotient;
// numerically sound but fails the l1 gate at every rescaling (h^2 min = 12).
inline Certificate tri_rank1(double mu = 1.0) {
    auto scale = [mu](const char* s) {
        return fsos::decimal_string(mu * std::stod(s));
    };
    CertPart g, h;
    const Term gt[] = {{{}, "5.31"},     {{1}, "1.77"},    {{2}, "1.77"},
                       {{3}, "1.77"},    {{1, 2}, "0.59"}, {{1, 3}, "0.59"},
                       {{2, 3}, "0.59"}, {{1, 2, 3}, "-0.59"}};
    const Term ht[] = {{{}, "4.72"},     {{1}, "0.75"},    {{2}, "0.75"},
                       {{3}, "0.75"},    {{1, 2}, "0.25"}, {{1, 3}, "0.25"},
                       {{2, 3}, "0.25"}, {{1, 2, 3}, "-0.25"}};
    for (const Term& t : gt) {
        g.support.push_back(t.first);
        g.coeffs.push_back(scale(t.second));
    }
    for (const Term& t : ht) {
        h.support.push_back(t.first);
        h.coeffs.push_back(scale(t.second));
    }
    return cert(tri(), Mode::MAXSAT, 1, {g}, {h});
}

// Rank-one polynomial certificate for chain(): the 26-term square root proxy.
inline Certificate chain_rank1() {
    return cert(chain(), Mode::MAXSAT, 1,
                {part({{{}, "1.63"},          {{1}, "0.079"},        {{2}, "0.079"},
                       {{3}, "0.167"},        {{4}, "0.167"},        {{5}, "0.167"},
                       {{6}, "0.167"},        {{1, 2}, "0.079"},     {{1, 3}, "-0.009"},
                       {{1, 4}, "-0.009"},    {{2, 3}, "-0.009"},    {{1, 5}, "-0.009"},
                       {{2, 4}, "-0.009"},    {{1, 6}, "-0.009"},    {{2, 5}, "-0.009"},
                       {{3, 4}, "-0.018"},    {{2, 6}, "-0.009"},    {{3, 5}, "-0.018"},
                       {{3, 6}, "-0.018"},    {{4, 5}, "-0.018"},    {{4, 6}, "-0.018"},
                       {{5, 6}, "-0.018"},    {{1, 2, 3}, "-0.009"}, {{1, 2, 4}, "-0.009"},
                       {{1, 2, 5}, "-0.009"}, {{1, 2, 6}, "-0.009"}})});
}

// Rank-7 polynomial certificate for chain() (exact l1 residual 0.00837...).
inline Certificate chain_poly7() {
    return cert(chain(), Mode::MAXSAT, 1,
                {part({{{}, "0.942"},
                       {{2}, "0.133"},
                       {{3}, "0.265"},
                       {{4}, "0.265"},
                       {{5}, "0.265"},
                       {{6}, "0.265"},
                       {{1, 2}, "0.133"}}),
                 part({{{2}, "-0.0687"},
                       {{3}, "-0.137"},
                       {{4}, "-0.137"},
                       {{5}, "-0.137"},
                       {{6}, "0.512"},
                       {{1, 2}, "-0.0687"}}),
                 part({{{2}, "-0.0904"},
                       {{3}, "-0.181"},
                       {{4}, "-0.181"},
                       {{5}, "0.494"},
                       {{1, 2}, "-0.0904"}}),
                 part({{{2}, "-0.133"}, {{3}, "-0.266"}, {{4}, "0.459"}, {{1, 2}, "-0.133"}}),
                 part({{{2}, "-0.257"}, {{3}, "0.375"}, {{1, 2}, "-0.257"}}),
                 part({{{2}, "0.0282"}, {{1, 2}, "0.389"}}),
                 part({{{2}, "0.388"}})});
}

// Rank-(8,2) rational certificate for ring() (exact l1 residual 0.23319...).
inline Certificate ring_rat() {
    return cert(
        ring(), Mode::MAXSAT, 2,
        {part({{{}, "0.9"},
               {{1, 2}, "0.15"},
               {{1, 3}, "-0.017"},
               {{1, 4}, "0.15"},
               {{2, 3}, "0.15"},
               {{2, 4}, "-0.017"},
               {{3, 4}, "0.05"},
               {{1, 2, 3, 4}, "-0.017"}}),
         part({{{1, 2}, "0.89"},
               {{1, 3}, "0.16"},
               {{1, 4}, "-0.044"},
               {{2, 3}, "-0.044"},
               {{2, 4}, "0.16"},
               {{3, 4}, "-0.026"},
               {{1, 2, 3, 4}, "0.054"}}),
         part({{{1, 3}, "0.89"},
               {{1, 4}, "0.061"},
               {{2, 3}, "0.17"},
               {{2, 4}, "-0.046"},
               {{3, 4}, "0.16"},
               {{1, 2, 3, 4}, "-0.027"}}),
         part({{{1, 4}, "0.89"},
               {{2, 3}, "-0.058"},
               {{2, 4}, "0.17"},
               {{3, 4}, "-0.039"},
               {{1, 2, 3, 4}, "0.16"}}),
         part({{{2, 3}, "0.87"},
               {{2, 4}, "0.083"},
               {{3, 4}, "-0.061"},
               {{1, 2, 3, 4}, "0.18"}}),
         part({{{2, 4}, "0.87"}, {{3, 4}, "0.19"}, {{1, 2, 3, 4}, "-0.079"}}),
         part({{{3, 4}, "0.86"}, {{1, 2, 3, 4}, "0.21"}}),
         part({{{1, 2, 3, 4}, "0.84"}})},
        {part({{{}, "1.5"}, {{3, 4}, "-0.17"}}), part({{{3, 4}, "1.5"}})});
}

// Rank-(6,3) rational certificate for weighted(), supported in supp(f).
// The numerators are as published; the denominators are refactored from the
// implied Gram matrix (the published ones are inconsistent with the g's).
inline Certificate weighted_rat() {
    return cert(weighted(), Mode::MAXSAT, 1,
                {part({{{}, "4.8633"},
                       {{1}, "1.1137"},
                       {{2}, "-2.3174"},
                       {{1, 3}, "0.91465"},
                       {{1, 2, 4}, "0.92812"},
                       {{1, 3, 4}, "-0.37125"}}),
                 part({{{1}, "-0.29964"},
                       {{2}, "1.1748"},
                       {{1, 3}, "-0.71298"},
                       {{1, 2, 4}, "2.0836"},
                       {{1, 3, 4}, "-0.42402"}}),
                 part({{{1}, "-1.6271"},
                       {{2}, "-0.70434"},
                       {{1, 3}, "1.2269"},
                       {{1, 3, 4}, "0.23793"}}),
                 part({{{1}, "1.3668"}, {{2}, "1.5683"}, {{1, 3, 4}, "-0.19985"}}),
                 part({{{1}, "0.57738"}, {{1, 3, 4}, "-0.1328"}}),
                 part({{{1, 3, 4}, "0.60116"}})},
                {part({{{}, "0.698723196961"},
                       {{2}, "0.0850343960431"},
                       {{1, 3}, "-0.18223179623"}}),
                 part({{{2}, "0.795886582076"}, {{1, 3}, "-0.237691015473"}}),
                 part({{{1, 3}, "0.766083491066"}})});
}

// Exact decimal string of a rational whose denominator divides 2^a 5^b.
inline std::string exact_decimal(Rational q) {
    q.canonicalize();
    mpz_class num = q.get_num(), den = q.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    int shift = 0;
    while (den % 2 == 0) {
        num *= 5;
        den /= 2;
        ++shift;
    }
    while (den % 5 == 0) {
        num *= 2;
        den /= 5;
        ++shift;
    }
    if (den != 1) throw std::invalid_argument("not a terminating decimal");
    std::string digits = num.get_str();
    std::string out;
    if (shift == 0) {
        out = digits;
    } else {
        while (static_cast<int>(digits.size()) <= shift) digits.insert(0, "0");
        out = digits.substr(0, digits.size() - shift) + "." +
              digits.substr(digits.size() - shift);
    }
    return neg ? "-" + out : out;
}

// The tautological certificate: g_i is the falsified-indicator of clause i,
// so sum g_i^2 == f_phi exactly (indicators are 0/1-valued, hence idempotent
// under the group convolution) and the L = 0 claim holds with zero error.
inline Certificate trivial_cert(const CnfFormula& phi) {
    std::vector<CertPart> gs;
    for (const fsos::Clause& c : phi.clauses) {
        fsos::MultilinearPoly<Rational> fc = fsos::clause_char(c, phi.n);
        CertPart p;
        for (auto& [m, co] : fc.terms) {
            p.support.push_back(m.vars());
            p.coeffs.push_back(exact_decimal(co));
        }
        gs.push_back(p);
    }
    return cert(phi, Mode::MAXSAT, 0, std::move(gs));
}

}  // namespace fx
