#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "fsos/approx.hpp"
#include "fsos/common.hpp"
#include "fsos/digest.hpp"
#include "fsos/monomial.hpp"
#include "fsos/poly.hpp"
#include "fsos/unipoly.hpp"

using namespace fsos;

namespace {

// Deterministic PRNG for property tests, independent of the corpus generator.
struct XorShift64 {
    uint64_t s;
    explicit XorShift64(uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % uint64_t(hi - lo + 1)); }
};

MultilinearPoly<Rational> random_poly(XorShift64& rng, int n, int max_terms) {
    MultilinearPoly<Rational> p(n);
    int terms = static_cast<int>(rng.range(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        Monomial m(n);
        for (int v = 1; v <= n; ++v)
            if (rng.next() & 1) m.set(v);
        Rational c(rng.range(-9, 9), rng.range(1, 4));
        c.canonicalize();
        p.add_term(m, c);
    }
    return p;
}

}  // namespace

TEST_CASE("monomial basics") {
    Monomial m = Monomial::of(4, {1, 3});
    CHECK(m.test(1));
    CHECK(!m.test(2));
    CHECK(m.test(3));
    CHECK(m.weight() == 2);
    CHECK(!m.empty());
    CHECK(Monomial(4).empty());
    CHECK(m.mask() == 0b0101u);
    CHECK(m.str() == "y1*y3");
    CHECK(Monomial(4).str() == "1");
    CHECK((m ^ Monomial::of(4, {3, 4})) == Monomial::of(4, {1, 4}));
    CHECK_THROWS_AS(m.test(5), std::out_of_range);
    CHECK_THROWS_AS(Monomial::of(4, {0}), std::out_of_range);
    CHECK_THROWS_AS(m ^ Monomial(3), std::invalid_argument);
}

TEST_CASE("canonical order: first differing variable decides, empty is minimum") {
    Monomial e(4);
    Monomial y12 = Monomial::of(4, {1, 2});
    Monomial y14 = Monomial::of(4, {1, 4});
    Monomial y23 = Monomial::of(4, {2, 3});
    Monomial y34 = Monomial::of(4, {3, 4});
    CHECK(canonical_less(e, y34));
    CHECK(canonical_less(e, y12));
    CHECK(canonical_less(y34, y23));
    CHECK(canonical_less(y23, y14));
    CHECK(canonical_less(y14, y12));
    CHECK(!canonical_less(y12, y34));
    CHECK(!canonical_less(y12, y12));
    // a proper subset never sorts above its superset's extra low variable
    CHECK(canonical_less(Monomial::of(4, {2}), Monomial::of(4, {1})));
    CHECK(canonical_less(Monomial::of(4, {2}), Monomial::of(4, {1, 2})));
}

TEST_CASE("polynomial term bookkeeping merges and erases") {
    MultilinearPoly<Rational> p(3);
    Monomial m = Monomial::of(3, {1, 2});
    p.add_term(m, Rational(1, 2));
    p.add_term(m, Rational(1, 2));
    CHECK(p.coeff(m) == Rational(1));
    p.add_term(m, Rational(-1));
    CHECK(p.zero());
    p.add_term(Monomial(3), Rational(0));
    CHECK(p.support_size() == 0);
    CHECK_THROWS_AS(p.add_term(Monomial(2), Rational(1)), std::invalid_argument);
    CHECK(mp_const<Rational>(3, Rational(5)).constant() == Rational(5));
}

TEST_CASE("xor_mul is pointwise multiplication of cube values") {
    XorShift64 rng(7);
    for (int iter = 0; iter < 1000; ++iter) {
        int n = static_cast<int>(rng.range(1, 10));
        MultilinearPoly<Rational> a = random_poly(rng, n, 6);
        MultilinearPoly<Rational> b = random_poly(rng, n, 6);
        MultilinearPoly<Rational> ab = xor_mul(a, b);
        std::vector<Rational> va = values_on_cube(a), vb = values_on_cube(b),
                              vab = values_on_cube(ab);
        for (size_t x = 0; x < va.size(); ++x) REQUIRE(vab[x] == va[x] * vb[x]);
    }
}

TEST_CASE("parseval: sum of squared values equals 2^n sum of squared coefficients") {
    XorShift64 rng(11);
    for (int iter = 0; iter < 1000; ++iter) {
        int n = static_cast<int>(rng.range(1, 10));
        MultilinearPoly<Rational> p = random_poly(rng, n, 8);
        Rational coeff_side(0);
        for (auto& [m, c] : p.terms) coeff_side += c * c;
        Rational value_side(0);
        for (const Rational& v : values_on_cube(p)) value_side += v * v;
        REQUIRE(value_side == Rational(1L << n) * coeff_side);
    }
}

TEST_CASE("transform round trip and evaluation agree") {
    XorShift64 rng(13);
    for (int iter = 0; iter < 200; ++iter) {
        int n = static_cast<int>(rng.range(1, 8));
        MultilinearPoly<Rational> p = random_poly(rng, n, 8);
        std::vector<Rational> vals = values_on_cube(p);
        MultilinearPoly<Rational> back = fourier_coeffs(vals, n);
        REQUIRE(back.terms == p.terms);
        std::vector<int> y(static_cast<size_t>(n), 1);
        for (size_t x = 0; x < vals.size(); ++x) {
            for (int j = 0; j < n; ++j) y[static_cast<size_t>(j)] = (x >> j) & 1 ? -1 : 1;
            REQUIRE(eval(p, y) == vals[x]);
        }
    }
}

TEST_CASE("cube value convention: all-ones point sits at index zero") {
    MultilinearPoly<Rational> p(2);
    p.add_term(Monomial::of(2, {1}), Rational(1));  // p = y1
    std::vector<Rational> v = values_on_cube(p);
    CHECK(v[0] == Rational(1));   // y = (+1, +1)
    CHECK(v[1] == Rational(-1));  // bit 0 set -> y1 = -1
    CHECK(v[2] == Rational(1));
    CHECK(v[3] == Rational(-1));
}

TEST_CASE("norms") {
    MultilinearPoly<Rational> p(2);
    p.add_term(Monomial(2), Rational(3, 2));
    p.add_term(Monomial::of(2, {1}), Rational(-1, 2));
    CHECK(l1_coeff_norm(p) == Rational(2));
    CHECK(linf_value_norm(p) == Rational(2));  // at y1 = -1
    MultilinearPoly<double> q(1);
    q.add_term(Monomial::of(1, {1}), -0.25);
    CHECK(l1_coeff_norm(q) == doctest::Approx(0.25));
}

TEST_CASE("rho truncation keeps an exact floor of the support") {
    MultilinearPoly<double> p(6);
    for (int v = 1; v <= 6; ++v) p.add_term(Monomial::of(6, {v}), 1.0 / v);
    // six terms at rho = 1/3 must keep exactly two (a floating floor of
    // 6 * (1/3) can evaluate to 1.999... and wrongly keep one)
    MultilinearPoly<double> t = rho_truncate(p, Rational(1, 3));
    REQUIRE(t.support_size() == 2);
    CHECK(t.coeff(Monomial::of(6, {1})) == 1.0);
    CHECK(t.coeff(Monomial::of(6, {2})) == 0.5);
    CHECK(rho_truncate(p, Rational(1)).support_size() == 6);
    CHECK(rho_truncate(p, Rational(1, 100)).support_size() == 1);
    // magnitude ties break toward the canonically smaller monomial
    MultilinearPoly<double> tie(2);
    tie.add_term(Monomial::of(2, {1}), 0.5);
    tie.add_term(Monomial::of(2, {2}), -0.5);
    MultilinearPoly<double> kept = rho_truncate(tie, Rational(1, 2));
    REQUIRE(kept.support_size() == 1);
    CHECK(kept.coeff(Monomial::of(2, {2})) == -0.5);
    CHECK_THROWS_AS(rho_truncate(p, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(rho_truncate(p, Rational(3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(rho_truncate(MultilinearPoly<double>(2), Rational(1)),
                    std::invalid_argument);
}

TEST_CASE("decimal strings round trip at twelve significant digits") {
    CHECK(rational_from_decimal("0.125") == Rational(1, 8));
    CHECK(rational_from_decimal("-3.5e-2") == Rational(-7, 200));
    CHECK(rational_from_decimal("10") == Rational(10));
    CHECK(rational_from_decimal("+0.5") == Rational(1, 2));
    CHECK_THROWS_AS(rational_from_decimal("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_decimal(""), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_decimal("abc"), std::invalid_argument);
    CHECK(decimal_string(0.125) == "0.125000000000");
    CHECK(trim_decimal("0.125000000000") == "0.125");
    CHECK(trim_decimal("1.000") == "1");
    double samples[] = {1.0 / 3, -0.00072513, 1234.5678, 9.999999999e-7, 2.0};
    for (double x : samples) {
        double back = to_double(rational_from_decimal(decimal_string(x)));
        CHECK(std::abs(back - x) <= 1e-11 * std::abs(x));
    }
}

TEST_CASE("binomial") {
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(5, 5) == 1);
    CHECK(binomial(3, 5) == 0);
}

TEST_CASE("sha-256 reference vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    CHECK(sha256_hex(std::string(1000000, 'a')) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("univariate polynomial helpers") {
    UniPoly<double> p({1.0, -2.0, 1.0});  // (t-1)^2
    CHECK(p.degree() == 2);
    CHECK(p(3.0) == doctest::Approx(4.0));
    CHECK(UniPoly<double>({0.0, 0.0}).zero());
    UniPoly<double> q({0.0, 1.0});
    CHECK(uni_mul(p, q).degree() == 3);
    CHECK(uni_mul(p, q)(2.0) == doctest::Approx(2.0));
    UniRational<double> r{q, p};
    CHECK(r(3.0) == doctest::Approx(0.75));
    CHECK_THROWS_AS(r(1.0), std::domain_error);
    CHECK(den_nonvanishing_on(r, 2.0, 5.0));
    CHECK(!den_nonvanishing_on(r, 0.0, 2.0));
}
