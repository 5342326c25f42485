#pragma once

// Discrete minimax approximation of sqrt(t) at a finite point set, solved as a
// linear program by a dense two-phase simplex with Bland's rule. The sizes are
// tiny (d+2 variables, 2*(#points) constraints); determinism beats speed here.

#include <Eigen/Dense>

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "fsos/common.hpp"
#include "fsos/unipoly.hpp"

namespace fsos {

struct MinimaxResult {
    UniPoly<double> poly;
    double lambda = 0;
};

namespace simplex_detail {

constexpr double kCostEps = 1e-9;
constexpr double kPivotEps = 1e-11;

// Tableau T is (m+1) x (ncols+1): m constraint rows, objective row last,
// right-hand side in the last column. Bland's rule: entering variable is the
// smallest-index column with negative reduced cost; the leaving row minimizes
// the ratio with ties broken by the smallest basic variable index.
inline bool pivot_to_optimum(Eigen::MatrixXd& T, std::vector<int>& basis, int ncols) {
    const int m = static_cast<int>(T.rows()) - 1;
    const int rhs = static_cast<int>(T.cols()) - 1;  // ncols only bounds entering columns
    for (;;) {
        int enter = -1;
        for (int j = 0; j < ncols; ++j)
            if (T(m, j) < -kCostEps) { enter = j; break; }
        if (enter < 0) return true;
        int leave = -1;
        double best = 0;
        for (int i = 0; i < m; ++i) {
            if (T(i, enter) > kPivotEps) {
                double ratio = T(i, rhs) / T(i, enter);
                if (leave < 0 || ratio < best - 1e-15 ||
                    (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
        }
        if (leave < 0) return false;  // unbounded
        T.row(leave) /= T(leave, enter);
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            double factor = T(i, enter);
            if (factor != 0.0) T.row(i) -= factor * T.row(leave);
        }
        basis[leave] = enter;
    }
}

// min c^T x  s.t.  A x <= b, x >= 0 (b may be negative). Returns optimal x.
inline std::vector<double> solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                    const Eigen::VectorXd& c) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    // Equalities with slacks; rows with negative rhs are negated and receive
    // an artificial variable for phase 1.
    std::vector<int> art_rows;
    for (int i = 0; i < m; ++i)
        if (b(i) < 0) art_rows.push_back(i);
    const int na = static_cast<int>(art_rows.size());
    const int ncols = n + m + na;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, ncols + 1);
    std::vector<int> basis(m);
    int art_at = 0;
    for (int i = 0; i < m; ++i) {
        double sign = b(i) < 0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) T(i, j) = sign * A(i, j);
        T(i, n + i) = sign;  // slack
        T(i, ncols) = sign * b(i);
        if (b(i) < 0) {
            T(i, n + m + art_at) = 1.0;
            basis[i] = n + m + art_at;
            ++art_at;
        } else {
            basis[i] = n + i;
        }
    }
    if (na > 0) {
        for (int j = n + m; j < ncols; ++j) T(m, j) = 1.0;  // phase-1 objective
        for (int i = 0; i < m; ++i)
            if (basis[i] >= n + m) T.row(m) -= T.row(i);
        if (!pivot_to_optimum(T, basis, ncols)) throw std::runtime_error("phase-1 unbounded");
        if (T(m, ncols) < -1e-7) throw std::runtime_error("LP infeasible");
        // Pivot any artificial still basic (at zero) out of the basis.
        for (int i = 0; i < m; ++i) {
            if (basis[i] < n + m) continue;
            int enter = -1;
            for (int j = 0; j < n + m; ++j)
                if (std::abs(T(i, j)) > kPivotEps) { enter = j; break; }
            if (enter < 0) continue;  // redundant row
            double factor = T(i, enter);
            T.row(i) /= factor;
            for (int r = 0; r <= m; ++r) {
                if (r == i) continue;
                double g = T(r, enter);
                if (g != 0.0) T.row(r) -= g * T.row(i);
            }
            basis[i] = enter;
        }
    }
    // Phase 2: real objective, artificial columns frozen.
    for (int j = 0; j <= ncols; ++j) T(m, j) = 0.0;
    for (int j = 0; j < n; ++j) T(m, j) = c(j);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n && c(basis[i]) != 0.0) T.row(m) -= c(basis[i]) * T.row(i);
    const int usable = n + m;  // exclude artificials from phase 2
    if (!pivot_to_optimum(T, basis, usable)) throw std::runtime_error("LP unbounded");
    std::vector<double> x(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = T(i, ncols);
    return x;
}

}  // namespace simplex_detail

// Coefficients minimizing max_i |sum_j a_j t_i^j - sqrt(t_i)| over the points.
inline MinimaxResult minimax_sqrt_at_points(const std::vector<Rational>& points, int d) {
    if (d < 0) throw std::invalid_argument("degree must be >= 0");
    if (static_cast<int>(points.size()) < d + 1)
        throw std::invalid_argument("need at least d+1 points");
    std::set<Rational> distinct;
    for (const Rational& p : points) {
        if (sgn(p) <= 0) throw std::invalid_argument("points must be positive");
        if (!distinct.insert(p).second) throw std::invalid_argument("duplicate approximation points");
    }
    const int P = static_cast<int>(points.size());
    // Variables: a_j = u_j - w_j (u,w >= 0), lambda. min lambda s.t.
    //   p(t_i) - lambda <= s_i  and  -p(t_i) - lambda <= -s_i.
    const int nv = 2 * (d + 1) + 1;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * P, nv);
    Eigen::VectorXd b(2 * P), c = Eigen::VectorXd::Zero(nv);
    c(nv - 1) = 1.0;
    for (int i = 0; i < P; ++i) {
        double t = to_double(points[i]);
        double s = std::sqrt(t);
        double pw = 1.0;
        for (int j = 0; j <= d; ++j) {
            A(2 * i, j) = pw;
            A(2 * i, d + 1 + j) = -pw;
            A(2 * i + 1, j) = -pw;
            A(2 * i + 1, d + 1 + j) = pw;
            pw *= t;
        }
        A(2 * i, nv - 1) = -1.0;
        A(2 * i + 1, nv - 1) = -1.0;
        b(2 * i) = s;
        b(2 * i + 1) = -s;
    }
    std::vector<double> x = simplex_detail::solve_lp(A, b, c);
    std::vector<double> coeffs(d + 1);
    for (int j = 0; j <= d; ++j) coeffs[j] = x[j] - x[d + 1 + j];
    MinimaxResult r{UniPoly<double>(std::move(coeffs)), x[nv - 1]};
    for (int i = 0; i < P; ++i) {
        double t = to_double(points[i]);
        if (std::abs(r.poly(t) - std::sqrt(t)) > r.lambda + 1e-8)
            throw std::runtime_error("minimax postcondition violated");
    }
    return r;
}

inline std::vector<Rational> half_integer_points(long hi) {
    std::vector<Rational> pts;
    for (long i = 0; i <= hi; ++i) pts.emplace_back(2 * i + 1, 2);
    return pts;
}

}  // namespace fsos
