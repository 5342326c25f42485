#pragma once

// Sparse multilinear polynomials on C_2^n = {+-1}^n in the character basis
// {z^alpha}. Terms are kept in canonical monomial order with no zero entries;
// all operations are deterministic given the inputs.

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsos/common.hpp"
#include "fsos/monomial.hpp"

namespace fsos {

inline Rational scalar_abs(const Rational& x) { return abs(x); }
inline double scalar_abs(double x) { return std::fabs(x); }
inline bool scalar_zero(const Rational& x) { return sgn(x) == 0; }
inline bool scalar_zero(double x) { return x == 0.0; }

template <class S>
struct MultilinearPoly {
    int n = 0;
    std::map<Monomial, S, MonomialLess> terms;

    MultilinearPoly() = default;
    explicit MultilinearPoly(int n_) : n(n_) {}

    void add_term(const Monomial& m, const S& c) {
        if (m.n() != n) throw std::invalid_argument("term width mismatch");
        auto it = terms.find(m);
        if (it == terms.end()) {
            if (!scalar_zero(c)) terms.emplace(m, c);
        } else {
            it->second += c;
            if (scalar_zero(it->second)) terms.erase(it);
        }
    }
    S coeff(const Monomial& m) const {
        auto it = terms.find(m);
        return it == terms.end() ? S(0) : it->second;
    }
    S constant() const { return coeff(Monomial(n)); }
    size_t support_size() const { return terms.size(); }
    bool zero() const { return terms.empty(); }
    int degree() const {
        int d = 0;
        for (auto& [m, c] : terms)
            d = d > m.weight() ? d : m.weight();
        return d;
    }
};

template <class S>
MultilinearPoly<S> mp_const(int n, const S& c) {
    MultilinearPoly<S> p(n);
    p.add_term(Monomial(n), c);
    return p;
}

template <class S>
MultilinearPoly<S> operator+(const MultilinearPoly<S>& a, const MultilinearPoly<S>& b) {
    if (a.n != b.n) throw std::invalid_argument("polynomial width mismatch");
    MultilinearPoly<S> r = a;
    for (auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
}

template <class S>
MultilinearPoly<S> operator-(const MultilinearPoly<S>& a, const MultilinearPoly<S>& b) {
    if (a.n != b.n) throw std::invalid_argument("polynomial width mismatch");
    MultilinearPoly<S> r = a;
    for (auto& [m, c] : b.terms) r.add_term(m, S(-c));
    return r;
}

template <class S>
MultilinearPoly<S> operator*(const S& s, const MultilinearPoly<S>& p) {
    MultilinearPoly<S> r(p.n);
    if (scalar_zero(s)) return r;
    for (auto& [m, c] : p.terms) r.add_term(m, s * c);
    return r;
}

// Product in the character basis: z^alpha * z^beta = z^(alpha xor beta).
// Naive sparse convolution with map accumulation; pointwise it is the product
// of the two functions on C_2^n.
template <class S>
MultilinearPoly<S> xor_mul(const MultilinearPoly<S>& a, const MultilinearPoly<S>& b) {
    if (a.n != b.n) throw std::invalid_argument("polynomial width mismatch");
    MultilinearPoly<S> r(a.n);
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) r.add_term(ma ^ mb, ca * cb);
    return r;
}

// Evaluation at a sign vector y in {+-1}^n.
template <class S>
S eval(const MultilinearPoly<S>& p, const std::vector<int>& y) {
    if (static_cast<int>(y.size()) != p.n) throw std::invalid_argument("point width mismatch");
    uint64_t neg[kMaxVars / 64 + 1] = {0};
    for (int i = 0; i < p.n; ++i) {
        if (y[i] == -1)
            neg[i >> 6] |= 1ull << (i & 63);
        else if (y[i] != 1)
            throw std::invalid_argument("evaluation point must be a +-1 sign vector");
    }
    S acc(0);
    for (auto& [m, c] : p.terms) {
        int par = 0;
        for (size_t w = 0; w < m.words(); ++w) par ^= std::popcount(m.word(w) & neg[w]) & 1;
        if (par)
            acc -= c;
        else
            acc += c;
    }
    return acc;
}

// Values over the whole cube, index x in [0, 2^n): bit j-1 of x is x_j and
// y_j = (-1)^{x_j} (so x = 0 is the all-ones point). Fast butterfly transform.
template <class S>
std::vector<S> values_on_cube(const MultilinearPoly<S>& p) {
    if (p.n > kExhaustiveLimit) throw std::invalid_argument("cube enumeration capped at n <= 20");
    size_t size = 1ull << p.n;
    std::vector<S> v(size, S(0));
    for (auto& [m, c] : p.terms) v[m.mask()] = c;
    for (int b = 0; b < p.n; ++b) {
        size_t half = 1ull << b;
        for (size_t i = 0; i < size; i += 2 * half)
            for (size_t j = i; j < i + half; ++j) {
                S a = v[j], d = v[j + half];
                v[j] = a + d;
                v[j + half] = a - d;
            }
    }
    return v;
}

// Exact Fourier coefficients from a full value table: f_alpha = 2^-n sum f(y) y^alpha.
// Inverse of values_on_cube (the butterfly is an involution up to 2^n).
template <class S>
MultilinearPoly<S> fourier_coeffs(const std::vector<S>& values, int n) {
    if (n > kExhaustiveLimit) throw std::invalid_argument("transform capped at n <= 20");
    if (values.size() != (1ull << n)) throw std::invalid_argument("value table size mismatch");
    std::vector<S> v = values;
    size_t size = v.size();
    for (int b = 0; b < n; ++b) {
        size_t half = 1ull << b;
        for (size_t i = 0; i < size; i += 2 * half)
            for (size_t j = i; j < i + half; ++j) {
                S a = v[j], d = v[j + half];
                v[j] = a + d;
                v[j + half] = a - d;
            }
    }
    MultilinearPoly<S> p(n);
    S scale = S(1) / S(static_cast<double>(size));
    if constexpr (!std::is_same_v<S, double>) scale = S(1) / S(static_cast<long>(size));
    for (size_t x = 0; x < size; ++x) {
        if (scalar_zero(v[x])) continue;
        Monomial m(n);
        for (int j = 1; j <= n; ++j)
            if ((x >> (j - 1)) & 1) m.set(j);
        p.terms.emplace(m, v[x] * scale);
    }
    return p;
}

template <class S>
S l1_coeff_norm(const MultilinearPoly<S>& p) {
    S s(0);
    for (auto& [m, c] : p.terms) s += scalar_abs(c);
    return s;
}

template <class S>
S linf_value_norm(const MultilinearPoly<S>& p) {
    S best(0);
    for (const S& v : values_on_cube(p)) {
        S a = scalar_abs(v);
        if (a > best) best = a;
    }
    return best;
}

inline MultilinearPoly<double> to_double_poly(const MultilinearPoly<Rational>& p) {
    MultilinearPoly<double> r(p.n);
    for (auto& [m, c] : p.terms) r.add_term(m, to_double(c));
    return r;
}

// Exact: every double is a dyadic rational.
inline MultilinearPoly<Rational> to_rational_poly(const MultilinearPoly<double>& p) {
    MultilinearPoly<Rational> r(p.n);
    for (auto& [m, c] : p.terms) r.add_term(m, Rational(c));
    return r;
}

template <class S>
std::string poly_str(const MultilinearPoly<S>& p) {
    if (p.terms.empty()) return "0";
    std::string s;
    for (auto& [m, c] : p.terms) {
        if (!s.empty()) s += " + ";
        if constexpr (std::is_same_v<S, double>)
            s += trim_decimal(decimal_string(c, 6));
        else
            s += c.get_str();
        if (!m.empty()) s += "*" + m.str();
    }
    return s;
}

}  // namespace fsos
