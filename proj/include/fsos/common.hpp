#pragma once

// Shared scalar types, exact-rational helpers and artifact-wide constants.

#include <gmpxx.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsos {

using Rational = mpq_class;

// Artifact-wide constants. DELTA is the fixed objective shift; it is a config
// constant on purpose (not a CLI flag) so the soundness window stays symmetric.
inline const Rational kDelta{1, 2};
constexpr int kMaxVars = 1024;              // monomial bitset ceiling
constexpr int kDefaultOracleLimit = 26;     // 2^n enumeration cap
constexpr int kExhaustiveLimit = 20;        // dense cube / WHT cap
constexpr double kSolverSafety = 0.01;      // accept solver runs below 1/2 - safety
constexpr double kPsdMargin = 1e-6;         // extra denominator margin while solving
constexpr double kPsdTol = 1e-7;            // PSD tolerance for factor extraction
constexpr double kRowPruneNorm = 1e-12;     // drop factor rows below this norm
constexpr int kCoeffDigits = 12;            // significant digits in serialized coeffs

inline int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    long r = std::strtol(v, &end, 10);
    if (end == v || r <= 0) return fallback;
    return static_cast<int>(r);
}

inline int env_threads() { return env_int("FSOS_THREADS", 0); }
inline int env_oracle_limit() { return env_int("FSOS_ORACLE_LIMIT", kDefaultOracleLimit); }

// Exact value of a plain or scientific decimal literal ("-1.25", "3e-4", "0.5290").
inline Rational rational_from_decimal(const std::string& s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    std::string digits;
    long frac = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_dot) ++frac;
            seen_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
        if (i >= s.size()) throw std::invalid_argument("bad decimal: " + s);
        long e = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad decimal: " + s);
            e = e * 10 + (s[i] - '0');
        }
        exp10 = eneg ? -e : e;
    }
    if (i != s.size() || !seen_digit) throw std::invalid_argument("bad decimal: " + s);
    mpz_class mant(digits.empty() ? "0" : digits, 10);
    if (neg) mant = -mant;
    long shift = exp10 - frac;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rational r;
    if (shift >= 0) {
        r = Rational(mant * pow10);
    } else {
        r = Rational(mant, pow10);
    }
    r.canonicalize();
    return r;
}

// Plain (exponent-free) decimal with `digits` significant digits; round-half-even
// comes from the C library's %e formatting of the double value.
inline std::string decimal_string(double x, int digits = kCoeffDigits) {
    if (x == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    std::string s(buf);
    bool neg = false;
    size_t p = 0;
    if (s[p] == '-') { neg = true; ++p; }
    size_t epos = s.find('e');
    std::string mant = s.substr(p, epos - p);
    int exp = std::atoi(s.c_str() + epos + 1);
    std::string md;
    for (char c : mant)
        if (c != '.') md.push_back(c);
    // value = 0.md * 10^(exp+1)
    int point = exp + 1;
    std::string out;
    if (point <= 0) {
        out = "0.";
        out.append(static_cast<size_t>(-point), '0');
        out += md;
    } else if (static_cast<size_t>(point) >= md.size()) {
        out = md;
        out.append(static_cast<size_t>(point) - md.size(), '0');
    } else {
        out = md.substr(0, static_cast<size_t>(point)) + "." + md.substr(static_cast<size_t>(point));
    }
    return neg ? "-" + out : out;
}

// Human rendering trims trailing fractional zeros ("1.22300000000" -> "1.223").
inline std::string trim_decimal(std::string s) {
    if (s.find('.') == std::string::npos) return s;
    size_t last = s.find_last_not_of('0');
    if (s[last] == '.') --last;
    s.erase(last + 1);
    return s;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace fsos
