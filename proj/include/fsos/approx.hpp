#pragma once

// sqrt(t) approximation toolbox: Chebyshev interpolation, Newman rational
// approximants, composition with multilinear polynomials, magnitude
// truncation, and the two rank-one analytic certificate constructions.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fsos/charfn.hpp"
#include "fsos/common.hpp"
#include "fsos/minimax.hpp"
#include "fsos/poly.hpp"
#include "fsos/unipoly.hpp"

namespace fsos {

struct ConstructionRefusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degree-d interpolant of sqrt(t) at the Chebyshev nodes of [a, b].
inline UniPoly<double> chebyshev_sqrt(const Rational& a, const Rational& b, int d) {
    if (sgn(a) <= 0) throw std::invalid_argument("interval must be strictly positive");
    if (!(a < b)) throw std::invalid_argument("need a < b");
    double lo = to_double(a), hi = to_double(b);
    double mid = (lo + hi) / 2, halfw = (hi - lo) / 2;
    int P = d + 1;
    std::vector<double> xs(P), fs(P);
    for (int k = 0; k < P; ++k) {
        xs[k] = mid + halfw * std::cos((2 * k + 1) * std::numbers::pi / (2 * P));
        fs[k] = std::sqrt(xs[k]);
    }
    // Newton divided differences, then expansion to monomial coefficients.
    std::vector<double> dd = fs;
    for (int lvl = 1; lvl < P; ++lvl)
        for (int i = P - 1; i >= lvl; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - lvl]);
    std::vector<double> coeffs(P, 0.0);
    coeffs[0] = dd[P - 1];
    int deg = 0;
    for (int i = P - 2; i >= 0; --i) {
        // coeffs <- coeffs*(x - xs[i]) + dd[i]
        for (int j = deg + 1; j > 0; --j) coeffs[j] = coeffs[j - 1] - xs[i] * coeffs[j];
        coeffs[0] = dd[i] - xs[i] * coeffs[0];
        ++deg;
    }
    return UniPoly<double>(std::move(coeffs));
}

// Newman approximant of sqrt on [0,1]: xi = exp(-1/sqrt(d)),
// p(x) = prod_{k<d} (x + xi^k), r(x) = x (p(x)-p(-x)) / (p(x)+p(-x))
// approximates |x|; substituting x = sqrt(t) and splitting p into even and odd
// parts E(x^2) + x O(x^2) gives the rational function t*O(t) / E(t) in t.
inline UniRational<double> newman_sqrt(int d) {
    if (d < 1) throw std::invalid_argument("degree must be >= 1");
    double xi = std::exp(-1.0 / std::sqrt(static_cast<double>(d)));
    std::vector<double> p{1.0};
    double xik = 1.0;
    for (int k = 0; k < d; ++k) {
        std::vector<double> next(p.size() + 1, 0.0);
        for (size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += p[i];
            next[i] += xik * p[i];
        }
        p = std::move(next);
        xik *= xi;
    }
    std::vector<double> even, odd;
    for (size_t i = 0; i < p.size(); ++i)
        (i % 2 == 0 ? even : odd).push_back(p[i]);
    UniPoly<double> O(std::move(odd));
    UniRational<double> r{uni_mul(UniPoly<double>({0.0, 1.0}), O), UniPoly<double>(std::move(even))};
    double bound = 3.0 * std::exp(-std::sqrt(static_cast<double>(d)));
    for (int i = 0; i <= 1000; ++i) {
        double t = i / 1000.0;
        if (std::abs(r(t) - std::sqrt(t)) > bound)
            throw std::logic_error("newman error bound violated on grid");
    }
    return r;
}

// Horner composition: pointwise equals p(f(y)).
template <class S>
MultilinearPoly<S> compose(const UniPoly<S>& p, const MultilinearPoly<S>& f) {
    MultilinearPoly<S> r(f.n);
    if (p.zero()) return r;
    r = mp_const<S>(f.n, p.coeffs.back());
    for (size_t j = p.coeffs.size() - 1; j-- > 0;) {
        r = xor_mul(r, f);
        r.add_term(Monomial(f.n), p.coeffs[j]);
    }
    return r;
}

inline MultilinearPoly<double> compose(const UniPoly<double>& p, const MultilinearPoly<Rational>& f) {
    return compose(p, to_double_poly(f));
}

// Keeps the max(1, floor(|supp| * rho)) largest-magnitude terms; ties in
// magnitude are broken toward the canonically smaller monomial. rho is exact
// so the term count never suffers a floating floor error.
template <class S>
MultilinearPoly<S> rho_truncate(const MultilinearPoly<S>& p, const Rational& rho) {
    if (p.zero()) throw std::invalid_argument("cannot truncate the zero polynomial");
    if (sgn(rho) <= 0 || rho > 1) throw std::invalid_argument("rho must be in (0,1]");
    mpz_class l_z = (mpz_class(static_cast<long>(p.support_size())) * rho.get_num()) / rho.get_den();
    size_t l = std::max<size_t>(1, l_z.get_ui());
    std::vector<std::pair<Monomial, S>> terms(p.terms.begin(), p.terms.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        S am = scalar_abs(a.second), bm = scalar_abs(b.second);
        if (am != bm) return am > bm;
        return canonical_less(a.first, b.first);
    });
    MultilinearPoly<S> r(p.n);
    for (size_t i = 0; i < l && i < terms.size(); ++i) r.terms.emplace(terms[i].first, terms[i].second);
    return r;
}

namespace rank_one_detail {

// Image bounds of the integer-valued part of the objective, from the oracle.
inline std::pair<long, long> int_image(const Objective& obj) {
    if (!obj.oracle_used) throw std::invalid_argument("rank-one constructions need oracle bounds");
    long lo = 0, hi = 0;
    switch (obj.mode) {
        case Mode::MAXSAT: lo = obj.l_min - obj.L; hi = obj.l_max - obj.L; break;
        case Mode::UNSAT: lo = obj.l_min - 1; hi = obj.l_max - 1; break;
        case Mode::MINSAT: lo = obj.L - obj.l_max; hi = obj.L - obj.l_min; break;
        case Mode::SAT: lo = -obj.l_max; hi = -obj.l_min; break;
    }
    return {lo, hi};
}

}  // namespace rank_one_detail

// Rank-one polynomial certificate: P = sqrt(hi) * p_d(g) with g the integer
// part rescaled to [alpha, 1], p_d the Chebyshev interpolant of sqrt. Applies
// only under the image hypothesis 5*lo > hi; the starting degree comes from
// the closed-form seed and the loop raises it until the error check passes.
inline MultilinearPoly<double> rank_one_poly_certificate(const Objective& obj, double eps) {
    if (eps >= 1.0 || eps <= 0.0)
        throw std::invalid_argument("eps must lie in (0,1): the soundness window is one unit wide");
    auto [lo, hi] = rank_one_detail::int_image(obj);
    MultilinearPoly<Rational> p_int = obj.f - mp_const<Rational>(obj.f.n, obj.shift);
    if (lo == hi)
        return mp_const<double>(obj.f.n, std::sqrt(static_cast<double>(lo)));
    if (!(5 * lo > hi))
        throw ConstructionRefusal(
            "image hypothesis violated: needs 5*(min image) > max image, got min=" +
            std::to_string(lo) + " max=" + std::to_string(hi));
    double l2e = std::log2(eps), l2hi = std::log2(static_cast<double>(hi));
    double l2lo = std::log2(static_cast<double>(lo));
    double l2gap = std::log2(static_cast<double>(hi - lo));
    int d1 = static_cast<int>(3 * std::floor((1 - l2e + l2hi) / (2 + l2lo - l2gap)));
    if (d1 < 1) d1 = 1;
    MultilinearPoly<double> g = (1.0 / hi) * to_double_poly(p_int);
    for (; d1 <= 64; ++d1) {
        UniPoly<double> cheb = chebyshev_sqrt(Rational(lo, hi), 1, d1);
        MultilinearPoly<double> P = std::sqrt(static_cast<double>(hi)) * compose(cheb, g);
        MultilinearPoly<double> err = xor_mul(P, P) - to_double_poly(p_int);
        double worst = P.n <= 15 ? linf_value_norm(err) : to_double(l1_coeff_norm(err));
        if (worst < eps) return P;
    }
    throw ConstructionRefusal("no rank-one polynomial certificate within the degree cap");
}

struct RankOneRational {
    MultilinearPoly<double> num, den;
    int degree = 0;
    double worst_error = 0;  // max over image points of |t - M (num/den)^2(t/M)|
};

// Rank-one rational certificate via the scaled Newman approximant:
// g = sqrt(M) * num(f/M), h = den(f/M) with M the top of the shifted image.
// Exact at the top image point; error <= 1/4 at every image point (the degree
// loop enforces it). Both parts are scaled so min_y h(y)^2 >= 1.
inline RankOneRational rank_one_rational_certificate(const Objective& obj) {
    auto [lo, hi] = rank_one_detail::int_image(obj);
    const double eps = 0.25;
    double M = static_cast<double>(hi) + 0.5;
    int d1 = 1;
    if (hi > lo) {
        double num = std::log2(static_cast<double>(hi - lo)) + std::log2(3.0) - std::log2(eps);
        d1 = static_cast<int>(std::ceil(num * num / (2 * std::numbers::pi * std::numbers::pi)));
        if (d1 < 1) d1 = 1;
    }
    MultilinearPoly<double> fd = to_double_poly(obj.f);
    for (; d1 <= 64; ++d1) {
        UniRational<double> r = newman_sqrt(d1);
        if (!den_nonvanishing_on(r, 0.0, 1.0)) continue;
        double worst = 0, hmin = std::numeric_limits<double>::infinity();
        bool den_ok = true;
        for (long i = lo; i <= hi; ++i) {
            double t = i + 0.5;
            double dv = r.den(t / M);
            if (dv == 0.0) { den_ok = false; break; }
            double approx = std::sqrt(M) * r.num(t / M) / dv;
            worst = std::max(worst, std::abs(t - approx * approx));
            hmin = std::min(hmin, std::abs(dv));
        }
        if (!den_ok) throw ConstructionRefusal("denominator vanished at an image point");
        if (worst > eps) continue;
        MultilinearPoly<double> u = (1.0 / M) * fd;
        RankOneRational cert;
        cert.num = std::sqrt(M) * compose(r.num, u);
        cert.den = compose(r.den, u);
        cert.degree = d1;
        cert.worst_error = worst;
        if (hmin < 1.0) {
            double mu = (1.0 + 1e-9) / hmin;
            cert.num = mu * cert.num;
            cert.den = mu * cert.den;
        }
        return cert;
    }
    throw ConstructionRefusal("no rank-one rational certificate within the degree cap");
}

}  // namespace fsos
