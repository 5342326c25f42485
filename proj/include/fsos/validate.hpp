#pragma once

// Independent certificate validators. All three re-derive the claim from the
// formula and the certificate's decimal coefficients using exact rational
// arithmetic; they share no code with the builder's solver path.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsos/certificate.hpp"
#include "fsos/charfn.hpp"
#include "fsos/cnf.hpp"
#include "fsos/common.hpp"
#include "fsos/poly.hpp"

namespace fsos {

enum class ValidationStatus {
    ACCEPTED,
    REJECTED_RESIDUAL,
    DENOMINATOR_UNPROVEN,
    INAPPLICABLE,
    DIGEST_MISMATCH,
};

inline std::string status_name(ValidationStatus s) {
    switch (s) {
        case ValidationStatus::ACCEPTED: return "ACCEPTED";
        case ValidationStatus::REJECTED_RESIDUAL: return "REJECTED_RESIDUAL";
        case ValidationStatus::DENOMINATOR_UNPROVEN: return "DENOMINATOR_UNPROVEN";
        case ValidationStatus::INAPPLICABLE: return "INAPPLICABLE";
        case ValidationStatus::DIGEST_MISMATCH: return "DIGEST_MISMATCH";
    }
    return "?";
}

struct ValidationReport {
    std::string method;
    ValidationStatus status = ValidationStatus::INAPPLICABLE;
    bool accepted = false;
    Rational residual = 0;  // method-specific exact statistic
    std::string denominator_method = "EXACT_LDL";
    bool denominator_ok = false;
    Rational denominator_margin = 0;
    long points_checked = 0;
    Mode mode = Mode::MAXSAT;
    long L = 0;
    std::string note;
};

// --- shared helpers ---------------------------------------------------------

struct CertPolys {
    std::vector<MultilinearPoly<Rational>> gs, hs;
};

inline CertPolys cert_polys(const Certificate& c) {
    CertPolys out;
    for (const CertPart& p : c.numerators) out.gs.push_back(poly_from_part(p, c.n));
    for (const CertPart& p : c.denominators) out.hs.push_back(poly_from_part(p, c.n));
    return out;
}

inline MultilinearPoly<Rational> sum_of_squares(const std::vector<MultilinearPoly<Rational>>& ps,
                                                int n) {
    MultilinearPoly<Rational> acc(n);
    for (const auto& p : ps) acc = acc + xor_mul(p, p);
    return acc;
}

// Shifted objective as an exact multilinear polynomial, reconstructed from the
// certificate's own mode and L claim.
inline MultilinearPoly<Rational> objective_poly(const CnfFormula& phi, Mode mode, long L) {
    MultilinearPoly<Rational> f = formula_char(phi);
    Rational half(1, 2);
    switch (mode) {
        case Mode::MAXSAT: return f + mp_const(phi.n, Rational(half - L));
        case Mode::UNSAT: return f + mp_const(phi.n, Rational(half - 1));
        case Mode::MINSAT: return mp_const(phi.n, Rational(Rational(L) + half)) - f;
        case Mode::SAT: return mp_const(phi.n, half) - f;
    }
    throw std::logic_error("bad mode");
}

struct LdlResult {
    bool psd = false;
    Rational min_pivot = 0;  // meaningful only when psd
};

// Exact LDL^T with diagonal pivoting; decides PSD-ness of a symmetric rational
// matrix with no floating point anywhere.
inline LdlResult exact_psd_ldl(std::vector<std::vector<Rational>> a) {
    const size_t n = a.size();
    LdlResult r{true, 0};
    bool have_pivot = false;
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        for (size_t i = k + 1; i < n; ++i)
            if (a[i][i] > a[p][p]) p = i;
        if (p != k) {
            std::swap(a[p], a[k]);
            for (size_t i = 0; i < n; ++i) std::swap(a[i][p], a[i][k]);
        }
        Rational piv = a[k][k];
        if (piv < 0) return {false, piv};
        if (piv == 0) {
            // Max trailing diagonal is zero: PSD iff the whole trailing block vanishes.
            for (size_t i = k; i < n; ++i)
                for (size_t j = k; j < n; ++j)
                    if (a[i][j] != 0) return {false, -1};
            if (!have_pivot || r.min_pivot > 0) r.min_pivot = 0;
            return r;
        }
        if (!have_pivot || piv < r.min_pivot) r.min_pivot = piv;
        have_pivot = true;
        for (size_t i = k + 1; i < n; ++i) {
            Rational f = a[i][k] / piv;
            if (f == 0) continue;
            for (size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return r;
}

// Gram-matrix denominator check: V' = H^T H over the union support T must
// satisfy V' >= (1/|T|) I, which certifies sum_i h_i^2 >= 1 pointwise.
inline LdlResult denominator_ldl(const std::vector<MultilinearPoly<Rational>>& hs) {
    std::vector<Monomial> t_set;
    {
        std::map<Monomial, int, MonomialLess> seen;
        for (const auto& h : hs)
            for (auto& [m, c] : h.terms) seen.emplace(m, 0);
        for (auto& [m, c] : seen) t_set.push_back(m);
    }
    if (t_set.empty()) return {false, -1};
    const size_t t = t_set.size();
    std::vector<std::vector<Rational>> m(t, std::vector<Rational>(t, Rational(0)));
    for (const auto& h : hs) {
        std::vector<Rational> row(t, Rational(0));
        for (size_t a = 0; a < t; ++a) row[a] = h.coeff(t_set[a]);
        for (size_t a = 0; a < t; ++a) {
            if (row[a] == 0) continue;
            for (size_t b = 0; b < t; ++b) m[a][b] += row[a] * row[b];
        }
    }
    Rational floor(1, static_cast<long>(t));
    for (size_t a = 0; a < t; ++a) m[a][a] -= floor;
    return exact_psd_ldl(std::move(m));
}

inline bool check_digest(const CnfFormula& phi, const Certificate& cert, ValidationReport& rep) {
    if (cert.n != phi.n || formula_digest(phi) != cert.formula_digest) {
        rep.status = ValidationStatus::DIGEST_MISMATCH;
        rep.accepted = false;
        rep.note = "certificate was issued for a different formula";
        return false;
    }
    return true;
}

// --- l1 validator ------------------------------------------------------------

inline ValidationReport validate_l1(const CnfFormula& phi, const Certificate& cert) {
    ValidationReport rep;
    rep.method = "l1";
    rep.mode = cert.mode;
    rep.L = cert.L;
    if (!check_digest(phi, cert, rep)) return rep;

    CertPolys cp = cert_polys(cert);
    MultilinearPoly<Rational> fobj = objective_poly(phi, cert.mode, cert.L);
    MultilinearPoly<Rational> gsum = sum_of_squares(cp.gs, cert.n);
    MultilinearPoly<Rational> err(cert.n);
    if (cp.hs.empty()) {
        err = fobj - gsum;
        rep.denominator_ok = true;
        rep.denominator_method = "IMPLICIT_ONE";
        rep.denominator_margin = 0;
    } else {
        MultilinearPoly<Rational> hsum = sum_of_squares(cp.hs, cert.n);
        err = xor_mul(hsum, fobj) - gsum;
        LdlResult ldl = denominator_ldl(cp.hs);
        rep.denominator_ok = ldl.psd;
        rep.denominator_margin = ldl.min_pivot;
    }
    rep.residual = l1_coeff_norm(err);
    rep.points_checked = static_cast<long>(err.terms.size());
    if (rep.residual >= Rational(1, 2)) {
        rep.status = ValidationStatus::REJECTED_RESIDUAL;
    } else if (!rep.denominator_ok) {
        rep.status = ValidationStatus::DENOMINATOR_UNPROVEN;
        rep.note = "coefficient l1 bound holds but sum h_i^2 >= 1 was not established";
    } else {
        rep.status = ValidationStatus::ACCEPTED;
        rep.accepted = true;
    }
    return rep;
}

// --- exhaustive validator ----------------------------------------------------

inline ValidationReport validate_exhaustive(const CnfFormula& phi, const Certificate& cert) {
    ValidationReport rep;
    rep.method = "exhaustive";
    rep.mode = cert.mode;
    rep.L = cert.L;
    if (!check_digest(phi, cert, rep)) return rep;
    if (phi.n > kExhaustiveLimit) {
        rep.status = ValidationStatus::INAPPLICABLE;
        rep.note = "cube has more than 2^" + std::to_string(kExhaustiveLimit) + " points";
        return rep;
    }

    CertPolys cp = cert_polys(cert);
    MultilinearPoly<Rational> gsum = sum_of_squares(cp.gs, cert.n);
    std::vector<Rational> gv = values_on_cube(gsum);
    std::vector<Rational> hv;
    if (!cp.hs.empty()) hv = values_on_cube(sum_of_squares(cp.hs, cert.n));

    const uint64_t total = uint64_t(1) << phi.n;
    // Point x encodes the assignment with variable j true iff bit j-1 is set;
    // then y_j = (-1)^{x_j} matches the cube-value convention.
    std::vector<bool> assign(static_cast<size_t>(phi.n), false);
    bool window_bad = false, den_bad = false;
    Rational worst(0);
    Rational one(1);
    for (uint64_t x = 0; x < total; ++x) {
        for (int j = 0; j < phi.n; ++j) assign[static_cast<size_t>(j)] = (x >> j) & 1;
        long falsified = count_falsified(phi, assign);
        Rational ipart = objective_int_part(cert.mode, cert.L, falsified);
        const Rational& g = gv[x];
        Rational h = cp.hs.empty() ? one : hv[x];
        if (h < 1) den_bad = true;
        if (h <= 0) {
            window_bad = true;
            continue;
        }
        Rational dev = abs(g / h - ipart);
        if (dev > worst) worst = dev;
        if (abs(g - h * ipart) >= h) window_bad = true;
    }
    rep.residual = worst;
    rep.points_checked = static_cast<long>(total);
    rep.denominator_ok = !den_bad;
    rep.denominator_method = "POINTWISE";
    if (window_bad) {
        rep.status = ValidationStatus::REJECTED_RESIDUAL;
    } else if (den_bad) {
        rep.status = ValidationStatus::DENOMINATOR_UNPROVEN;
        rep.note = "rounding window holds but sum h_i^2 dips below 1 somewhere";
    } else {
        rep.status = ValidationStatus::ACCEPTED;
        rep.accepted = true;
    }
    return rep;
}

// --- sampling validator ------------------------------------------------------

// Tight low-weight extrapolation bound: a multilinear polynomial of degree d
// that is at most eps in absolute value on every point of weight <= d is at
// most this much at a point of weight w.
inline Rational extrapolation_bound(int d, int x_weight, const Rational& eps) {
    if (d < 0) throw std::invalid_argument("degree must be nonnegative");
    if (x_weight <= d) return eps;
    unsigned long w = static_cast<unsigned long>(x_weight);
    Rational sum(0);
    for (int p = 0; p <= d; ++p)
        sum += binomial(w, static_cast<unsigned long>(p)) *
               binomial(w - static_cast<unsigned long>(p) - 1,
                        static_cast<unsigned long>(d - p));
    return eps * sum;
}

// Looser closed form valid on the whole cube, via the ceiling weight.
inline Rational extrapolation_bound_cube(int d, int ceil_weight, const Rational& eps) {
    if (d < 0) throw std::invalid_argument("degree must be nonnegative");
    Rational sum(0);
    Rational pow2(1);
    for (int j = 0; j <= d; ++j) {
        sum += pow2 * binomial(static_cast<unsigned long>(ceil_weight),
                               static_cast<unsigned long>(j));
        pow2 *= 2;
    }
    return eps * sum;
}

inline ValidationReport validate_sampling(const CnfFormula& phi, const Certificate& cert,
                                          uint64_t point_budget = 4000000) {
    ValidationReport rep;
    rep.method = "sampling";
    rep.mode = cert.mode;
    rep.L = cert.L;
    if (!check_digest(phi, cert, rep)) return rep;

    CertPolys cp = cert_polys(cert);
    MultilinearPoly<Rational> gsum = sum_of_squares(cp.gs, cert.n);
    MultilinearPoly<Rational> hsum = cp.hs.empty() ? mp_const(cert.n, Rational(1))
                                                   : sum_of_squares(cp.hs, cert.n);
    int deg_r = std::max(gsum.degree(), hsum.degree() + phi.max_width());
    if (deg_r > phi.n) {
        rep.status = ValidationStatus::INAPPLICABLE;
        rep.note = "residual degree " + std::to_string(deg_r) + " exceeds n";
        return rep;
    }
    const int big_d = deg_r;
    Rational count(0);
    for (int j = 0; j <= big_d; ++j)
        count += binomial(static_cast<unsigned long>(phi.n), static_cast<unsigned long>(j));
    if (count > Rational(static_cast<long>(std::min<uint64_t>(point_budget, INT64_MAX)))) {
        rep.status = ValidationStatus::INAPPLICABLE;
        rep.note = "low-weight sample set larger than the point budget";
        return rep;
    }
    Rational tol = Rational(1) / (2 * count * count);

    // Enumerate all x of Hamming weight <= D; the map y = 2x - 1 sends a set
    // bit to y = +1, and tau says y = +1 encodes "false", so the CNF
    // assignment is the complement of x. Members hold variable numbers 1..n.
    std::vector<int> y(static_cast<size_t>(phi.n), 0);
    std::vector<bool> assign(static_cast<size_t>(phi.n), false);
    Rational worst(0);
    long points = 0;
    bool over = false;
    std::vector<int> idx;
    auto visit = [&](const std::vector<int>& members) {
        for (int j = 0; j < phi.n; ++j) {
            y[static_cast<size_t>(j)] = -1;
            assign[static_cast<size_t>(j)] = true;
        }
        for (int j : members) {
            y[static_cast<size_t>(j) - 1] = 1;
            assign[static_cast<size_t>(j) - 1] = false;
        }
        long falsified = count_falsified(phi, assign);
        Rational ipart = objective_int_part(cert.mode, cert.L, falsified);
        Rational r = eval(gsum, y) - eval(hsum, y) * ipart;
        Rational dev = abs(r);
        if (dev > worst) worst = dev;
        if (dev > tol) over = true;
        ++points;
    };
    for (int w = 0; w <= big_d; ++w) {
        idx.assign(static_cast<size_t>(w), 0);
        for (int j = 0; j < w; ++j) idx[static_cast<size_t>(j)] = j + 1;
        while (true) {
            visit(idx);
            if (w == 0) break;
            int j = w - 1;
            while (j >= 0 && idx[static_cast<size_t>(j)] == phi.n - (w - 1 - j)) --j;
            if (j < 0) break;
            ++idx[static_cast<size_t>(j)];
            for (int t = j + 1; t < w; ++t)
                idx[static_cast<size_t>(t)] = idx[static_cast<size_t>(t - 1)] + 1;
        }
    }

    rep.residual = worst;
    rep.points_checked = points;
    if (cp.hs.empty()) {
        rep.denominator_ok = true;
        rep.denominator_method = "IMPLICIT_ONE";
    } else {
        LdlResult ldl = denominator_ldl(cp.hs);
        rep.denominator_ok = ldl.psd;
        rep.denominator_margin = ldl.min_pivot;
    }
    if (over) {
        rep.status = ValidationStatus::REJECTED_RESIDUAL;
        rep.note = "low-weight residual exceeds 1/(2N^2)";
    } else if (!rep.denominator_ok) {
        rep.status = ValidationStatus::DENOMINATOR_UNPROVEN;
        rep.note = "sampled residual within tolerance but sum h_i^2 >= 1 unproven";
    } else {
        rep.status = ValidationStatus::ACCEPTED;
        rep.accepted = true;
    }
    return rep;
}

inline nlohmann::ordered_json report_to_json(const ValidationReport& rep) {
    nlohmann::ordered_json j;
    j["method"] = rep.method;
    j["status"] = status_name(rep.status);
    j["accepted"] = rep.accepted;
    j["residual"] = {{"num", rep.residual.get_num().get_str()},
                     {"den", rep.residual.get_den().get_str()},
                     {"approx", decimal_string(to_double(rep.residual))}};
    j["denominator"] = {{"method", rep.denominator_method},
                        {"ok", rep.denominator_ok},
                        {"margin", decimal_string(to_double(rep.denominator_margin))}};
    j["points_checked"] = rep.points_checked;
    j["mode"] = mode_name(rep.mode);
    j["L"] = rep.L;
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

}  // namespace fsos
