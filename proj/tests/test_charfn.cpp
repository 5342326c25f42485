#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <vector>

#include "fsos/charfn.hpp"
#include "fsos/cnf.hpp"
#include "fsos/corpus.hpp"
#include "fsos/poly.hpp"
#include "fixtures.hpp"

using namespace fsos;

namespace {

Monomial mono(int n, std::initializer_list<int> vars) { return Monomial::of(n, vars); }

}  // namespace

TEST_CASE("clause indicator is the exact 0/1 falsification marker") {
    CnfFormula f = parse_dimacs("p cnf 3 1\n1 -2 0\n");
    MultilinearPoly<Rational> fc = clause_char(f.clauses[0], 3);
    CHECK(fc.support_size() == 4);  // 2^width terms
    long ones = 0;
    for (uint64_t x = 0; x < 8; ++x) {
        std::vector<bool> assign(3);
        for (int j = 0; j < 3; ++j) assign[j] = (x >> j) & 1;
        Rational v = eval(fc, tau(assign));
        CHECK(v == (clause_falsified(f.clauses[0], assign) ? 1 : 0));
        if (v == 1) ++ones;
    }
    CHECK(ones == 2);  // x3 is unconstrained: 2^(n - width) falsifying points
}

TEST_CASE("characteristic function of the triangle formula") {
    MultilinearPoly<Rational> f = formula_char(fx::tri());
    REQUIRE(f.support_size() == 8);
    CHECK(f.coeff(Monomial(3)) == Rational(13, 8));
    CHECK(f.coeff(mono(3, {1})) == Rational(3, 8));
    CHECK(f.coeff(mono(3, {2})) == Rational(3, 8));
    CHECK(f.coeff(mono(3, {3})) == Rational(3, 8));
    CHECK(f.coeff(mono(3, {1, 2})) == Rational(1, 8));
    CHECK(f.coeff(mono(3, {1, 3})) == Rational(1, 8));
    CHECK(f.coeff(mono(3, {2, 3})) == Rational(1, 8));
    CHECK(f.coeff(mono(3, {1, 2, 3})) == Rational(-1, 8));
}

TEST_CASE("characteristic function of the weighted formula") {
    MultilinearPoly<Rational> f = formula_char(fx::weighted());
    REQUIRE(f.support_size() == 6);
    CHECK(f.coeff(Monomial(4)) == Rational(29));
    CHECK(f.coeff(mono(4, {1})) == Rational(6));
    CHECK(f.coeff(mono(4, {2})) == Rational(-13));
    CHECK(f.coeff(mono(4, {1, 3})) == Rational(6));
    CHECK(f.coeff(mono(4, {1, 2, 4})) == Rational(5));
    CHECK(f.coeff(mono(4, {1, 3, 4})) == Rational(-2));
}

TEST_CASE("degree of the characteristic function is at most the clause width") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        for (int k = 1; k <= 3; ++k) {
            CnfFormula phi = gen_random({k, 8, 0, seed, false, std::nullopt});
            CHECK(formula_char(phi).degree() <= k);
        }
    }
}

TEST_CASE("support size obeys both combinatorial caps") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        for (int k = 1; k <= 3; ++k) {
            CnfFormula phi = gen_random({k, 8, 0, seed, false, std::nullopt});
            MultilinearPoly<Rational> f = formula_char(phi);
            mpz_class cap = 0;
            for (int i = 0; i <= k; ++i) cap += binomial(8, i);
            CHECK(mpz_class(f.support_size()) <= cap);
            CHECK(f.support_size() <= (1L << k) * phi.m());
        }
    }
}

TEST_CASE("construction cost is linear in the clause count") {
    for (int k = 1; k <= 3; ++k) {
        for (long m : {10L, 40L}) {
            CnfFormula phi = gen_random({k, 12, m, 9, false, std::nullopt});
            long ops = 0;
            formula_char(phi, &ops);
            // each clause contributes at most sum_j 2*2^j + 2^k < 3*2^k*k ops
            CHECK(ops <= 3L * (1L << k) * k * phi.m());
        }
    }
}

TEST_CASE("characteristic function counts falsified clauses exhaustively") {
    for (uint64_t seed = 1; seed <= 3; ++seed) {
        CnfFormula phi = gen_random({3, 12, 25, seed, false, std::nullopt});
        MultilinearPoly<Rational> f = formula_char(phi);
        std::vector<Rational> vals = values_on_cube(f);
        for (uint64_t x = 0; x < (1ull << 12); ++x) {
            std::vector<bool> assign(12);
            for (int j = 0; j < 12; ++j) assign[j] = (x >> j) & 1;
            REQUIRE(vals[x] == count_falsified(phi, assign));
            REQUIRE(vals[x] >= 0);
            REQUIRE(vals[x] <= phi.m());
        }
    }
}

TEST_CASE("shifted objective for the chain formula") {
    Objective obj = objective(fx::chain(), Mode::MAXSAT, std::nullopt);
    CHECK(obj.L == 1);
    CHECK(obj.oracle_used);
    CHECK(obj.l_min == 1);
    CHECK(obj.l_max == 6);
    CHECK(obj.range_hi == 5);
    REQUIRE(obj.f.support_size() == 8);
    CHECK(obj.f.coeff(Monomial(6)) == Rational(11, 4));
    CHECK(obj.f.coeff(mono(6, {1})) == Rational(1, 4));
    CHECK(obj.f.coeff(mono(6, {2})) == Rational(1, 4));
    for (int v = 3; v <= 6; ++v) CHECK(obj.f.coeff(mono(6, {v})) == Rational(1, 2));
    CHECK(obj.f.coeff(mono(6, {1, 2})) == Rational(1, 4));
}

TEST_CASE("shifted objective for the ring formula") {
    Objective obj = objective(fx::ring(), Mode::MAXSAT, std::nullopt);
    CHECK(obj.L == 2);
    CHECK(obj.range_hi == 2);
    REQUIRE(obj.f.support_size() == 5);
    CHECK(obj.f.coeff(Monomial(4)) == Rational(3, 2));
    CHECK(obj.f.coeff(mono(4, {1, 2})) == Rational(1, 4));
    CHECK(obj.f.coeff(mono(4, {1, 4})) == Rational(1, 4));
    CHECK(obj.f.coeff(mono(4, {2, 3})) == Rational(1, 4));
    CHECK(obj.f.coeff(mono(4, {3, 4})) == Rational(1, 4));
}

TEST_CASE("objective values are falsified count minus L plus one half") {
    CnfFormula phi = fx::ring();
    Objective obj = objective(phi, Mode::MAXSAT, std::nullopt);
    for (uint64_t x = 0; x < 16; ++x) {
        std::vector<bool> assign(4);
        for (int j = 0; j < 4; ++j) assign[j] = (x >> j) & 1;
        Rational expect = Rational(count_falsified(phi, assign) - obj.L) + Rational(1, 2);
        CHECK(eval(obj.f, tau(assign)) == expect);
    }
}

TEST_CASE("objective refusals carry a countering witness") {
    CHECK_THROWS_AS(objective(fx::tri(), Mode::MAXSAT, 2), ObjectiveRefusal);
    try {
        objective(fx::tri(), Mode::MAXSAT, 2);
    } catch (const ObjectiveRefusal& e) {
        CHECK(count_falsified(fx::tri(), e.witness) == 1);  // beats the claimed L = 2
    }
    // satisfiable formula: no unsatisfiability certificate
    CnfFormula sat = parse_dimacs("p cnf 2 2\n1 0\n2 0\n");
    CHECK_THROWS_AS(objective(sat, Mode::UNSAT, std::nullopt), ObjectiveRefusal);
    try {
        objective(sat, Mode::UNSAT, std::nullopt);
    } catch (const ObjectiveRefusal& e) {
        CHECK(count_falsified(sat, e.witness) == 0);
    }
    CHECK_THROWS_AS(objective(fx::tri(), Mode::MINSAT, 2), ObjectiveRefusal);
    try {
        objective(fx::tri(), Mode::MINSAT, 2);
    } catch (const ObjectiveRefusal& e) {
        CHECK(count_falsified(fx::tri(), e.witness) == 3);  // beats the claimed L = 2
    }
    CHECK_THROWS_AS(objective(sat, Mode::SAT, std::nullopt), ObjectiveRefusal);
}

TEST_CASE("mode table") {
    // UNSAT: f = f_phi - 1/2, L pinned to 1
    Objective u = objective(fx::ring(), Mode::UNSAT, std::nullopt);
    CHECK(u.L == 1);
    CHECK(u.range_hi == 3);
    CHECK(u.f.coeff(Monomial(4)) == Rational(5, 2));  // 3 - 1/2
    // MINSAT: f = L - f_phi + 1/2 with auto L = L_max
    Objective m = objective(fx::tri(), Mode::MINSAT, std::nullopt);
    CHECK(m.L == 3);
    CHECK(m.range_hi == 2);
    CHECK(m.f.coeff(Monomial(3)) == Rational(3) + Rational(1, 2) - Rational(13, 8));
    CHECK(m.f.coeff(mono(3, {1})) == Rational(-3, 8));
    // SAT: valid only for formulae no assignment can falsify
    CnfFormula empty = parse_dimacs("p cnf 2 0\n");
    Objective s = objective(empty, Mode::SAT, std::nullopt);
    CHECK(s.L == 0);
    CHECK(s.range_hi == 0);
    CHECK(s.f.constant() == Rational(1, 2));
}

TEST_CASE("claimed bounds without the oracle") {
    Objective obj = objective(fx::tri(), Mode::MAXSAT, 1, false);
    CHECK(obj.L == 1);
    CHECK(obj.l_claimed);
    CHECK(!obj.oracle_used);
    CHECK(obj.range_hi == 3);  // m - L fallback
    // a wrong claim is not caught here; the validators reject it downstream
    Objective wrong = objective(fx::tri(), Mode::MAXSAT, 2, false);
    CHECK(wrong.f.constant() == Rational(13, 8) - Rational(3, 2));
    // modes that need a bound refuse to run blind
    CnfFormula big = gen_random({3, 30, 40, 1, false, std::nullopt});
    CHECK_THROWS_AS(objective(big, Mode::MAXSAT, std::nullopt, true, 20),
                    std::invalid_argument);
    CHECK(objective(big, Mode::MAXSAT, 3, true, 20).l_claimed);
}

TEST_CASE("integer part of the objective per mode") {
    CHECK(objective_int_part(Mode::MAXSAT, 2, 5) == Rational(3));
    CHECK(objective_int_part(Mode::UNSAT, 1, 4) == Rational(3));
    CHECK(objective_int_part(Mode::MINSAT, 4, 1) == Rational(3));
    CHECK(objective_int_part(Mode::SAT, 0, 0) == Rational(0));
    CHECK(objective_int_part(Mode::SAT, 0, 2) == Rational(-2));
}

TEST_CASE("mode names round trip") {
    for (Mode m : {Mode::MAXSAT, Mode::SAT, Mode::UNSAT, Mode::MINSAT})
        CHECK(mode_from_name(mode_name(m)) == m);
    CHECK_THROWS_AS(mode_from_name("MaxSat"), std::invalid_argument);
}
