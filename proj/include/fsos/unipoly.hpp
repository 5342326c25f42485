#pragma once

// Univariate polynomials and rational functions used by the sqrt(t)
// approximation machinery.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fsos {

template <class S>
struct UniPoly {
    std::vector<S> coeffs;  // a0..ad, trailing coefficient nonzero (or empty = zero poly)

    UniPoly() = default;
    explicit UniPoly(std::vector<S> c) : coeffs(std::move(c)) { normalize(); }

    void normalize() {
        while (!coeffs.empty() && coeffs.back() == S(0)) coeffs.pop_back();
    }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool zero() const { return coeffs.empty(); }

    S operator()(const S& t) const {
        S acc(0);
        for (size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
        return acc;
    }
};

template <class S>
UniPoly<S> uni_mul(const UniPoly<S>& a, const UniPoly<S>& b) {
    if (a.zero() || b.zero()) return UniPoly<S>{};
    std::vector<S> c(a.coeffs.size() + b.coeffs.size() - 1, S(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
    return UniPoly<S>(std::move(c));
}

template <class S>
struct UniRational {
    UniPoly<S> num, den;

    S operator()(const S& t) const {
        S d = den(t);
        if (d == S(0)) throw std::domain_error("rational approximant denominator vanished");
        return num(t) / d;
    }
};

// den must keep one sign on [lo, hi]; checked on a dense grid plus sign of the
// derivative-free interval endpoints (den has no real roots there for the
// Newman construction, this is a guard for imported parameters).
template <class S>
bool den_nonvanishing_on(const UniRational<S>& r, S lo, S hi, int grid = 4096) {
    S first = r.den(lo);
    if (first == S(0)) return false;
    for (int i = 1; i <= grid; ++i) {
        S t = lo + (hi - lo) * S(i) / S(grid);
        S v = r.den(t);
        if (v == S(0) || (v > S(0)) != (first > S(0))) return false;
    }
    return true;
}

}  // namespace fsos
