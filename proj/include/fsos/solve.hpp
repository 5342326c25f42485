#pragma once

// Internal first-order SDP solver (primal-dual splitting between the PSD
// cones and the affine-l1 term) and PSD factor extraction. Float arithmetic
// throughout; exactness is restored downstream by the validators.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fsos/common.hpp"
#include "fsos/gram.hpp"
#include "fsos/poly.hpp"

namespace fsos {

struct SolverConfig {
    int max_iters = 20000;
    int check_every = 25;
    double safety = kSolverSafety;   // feasibility accept gate: l1 < 1/2 - safety
    double mu = kPsdMargin;          // extra denominator PSD margin
    long time_budget_ms = 0;         // 0 = no wall-clock cap
};

struct SolveOutcome {
    bool found = false;              // feasibility reached (or MIN_L1 finished)
    GramSolution sol;
    double best_residual = std::numeric_limits<double>::infinity();
    int iters_used = 0;
};

namespace solve_detail {

inline void project_psd(Eigen::MatrixXd& M, double floor_ev) {
    Eigen::MatrixXd sym = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(floor_ev);
    M = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

inline double min_eigenvalue(const Eigen::MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()));
    return es.eigenvalues().minCoeff();
}

}  // namespace solve_detail

inline SolveOutcome solve(const GramProblem& p, const SolverConfig& cfg = {}) {
    using Eigen::MatrixXd;
    using Eigen::VectorXd;
    const int ns = static_cast<int>(p.S.size());
    const int nt = static_cast<int>(p.T.size());
    const int nl = static_cast<int>(p.lambda.size());
    const bool pin_v = p.mode == GramMode::MIN_L1_POLY;
    const double v_floor = 1.0 / nt + cfg.mu;
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    auto apply_a = [&](const MatrixXd& U, const MatrixXd& V) {
        VectorXd r = VectorXd::Zero(nl);
        for (const auto& e : p.u_entries) r(e.lam) += (e.i == e.j ? 1.0 : 2.0) * U(e.i, e.j);
        for (const auto& e : p.v_entries) r(e.lam) -= (e.i == e.j ? 1.0 : 2.0) * e.fg * V(e.i, e.j);
        return r;
    };
    auto apply_at = [&](const VectorXd& y, MatrixXd& GU, MatrixXd& GV) {
        GU.setZero();
        GV.setZero();
        for (const auto& e : p.u_entries) {
            GU(e.i, e.j) += y(e.lam);
            if (e.i != e.j) GU(e.j, e.i) += y(e.lam);
        }
        if (!pin_v)
            for (const auto& e : p.v_entries) {
                GV(e.i, e.j) -= e.fg * y(e.lam);
                if (e.i != e.j) GV(e.j, e.i) -= e.fg * y(e.lam);
            }
    };

    // Operator norm by fixed-schedule power iteration (deterministic start).
    MatrixXd pu = MatrixXd::Identity(ns, ns), pv = MatrixXd::Identity(nt, nt);
    MatrixXd gu(ns, ns), gv(nt, nt);
    double opnorm = 1.0;
    for (int it = 0; it < 60; ++it) {
        VectorXd y = apply_a(pu, pv);
        apply_at(y, gu, gv);
        double nrm = std::sqrt(gu.squaredNorm() + gv.squaredNorm());
        if (nrm < 1e-30) break;
        opnorm = std::sqrt(nrm);  // ||A^T A x|| -> ||A||^2 at the fixed point
        pu = gu / nrm;
        pv = gv / nrm;
    }
    const double step = 0.95 / std::max(opnorm, 1e-12);

    double f0 = 0;
    {
        auto it = p.f.terms.find(Monomial(p.f.n));
        if (it != p.f.terms.end()) f0 = it->second;
    }
    MatrixXd U = (std::max(f0, 1.0) / ns) * MatrixXd::Identity(ns, ns);
    MatrixXd V = v_floor * MatrixXd::Identity(nt, nt);
    if (pin_v) V = MatrixXd::Identity(1, 1);
    MatrixXd Ubar = U, Vbar = V, Uprev, Vprev;
    VectorXd y = VectorXd::Zero(nl);

    SolveOutcome out;
    auto consider = [&](int iter) {
        double res = gram_l1_residual(p, U, V);
        if (!std::isfinite(res)) return false;
        if (res < out.best_residual) {
            out.best_residual = res;
            out.sol.U = U;
            out.sol.V = V;
            out.iters_used = iter;
        }
        return p.mode == GramMode::FEASIBILITY_RATIONAL && res < 0.5 - cfg.safety;
    };

    bool reached = false;
    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        y += step * apply_a(Ubar, Vbar);
        y = y.cwiseMax(-1.0).cwiseMin(1.0);
        Uprev = U;
        Vprev = V;
        apply_at(y, gu, gv);
        U -= step * gu;
        solve_detail::project_psd(U, 0.0);
        if (!pin_v) {
            V -= step * gv;
            solve_detail::project_psd(V, v_floor);
        }
        Ubar = 2 * U - Uprev;
        Vbar = 2 * V - Vprev;
        if (!U.allFinite() || !V.allFinite()) {
            out.found = false;
            return out;  // numerical breakdown counts as infeasible here
        }
        if ((iter + 1) % cfg.check_every == 0) {
            if (consider(iter + 1)) { reached = true; break; }
            if (cfg.time_budget_ms > 0 && elapsed_ms() > cfg.time_budget_ms) break;
        }
    }
    if (!reached) reached = consider(iter);
    if (out.sol.U.size() == 0) { out.found = false; return out; }
    out.sol.l1_residual = out.best_residual;
    out.sol.psd_margins = {solve_detail::min_eigenvalue(out.sol.U),
                           solve_detail::min_eigenvalue(out.sol.V)};
    if (p.mode == GramMode::FEASIBILITY_RATIONAL)
        out.found = out.best_residual < 0.5 - cfg.safety;
    else
        out.found = true;  // minimization reports its best residual
    return out;
}

// Factor rows of a PSD-up-to-tol matrix as polynomials over the given labels.
inline std::vector<MultilinearPoly<double>> psd_extract(const Eigen::MatrixXd& M,
                                                        const std::vector<Monomial>& labels,
                                                        double tol = kPsdTol) {
    if (M.rows() != M.cols() || static_cast<size_t>(M.rows()) != labels.size())
        throw std::invalid_argument("matrix/label size mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()));
    if (es.eigenvalues().minCoeff() < -tol)
        throw std::invalid_argument("matrix is not PSD within tolerance");
    const int n = static_cast<int>(M.rows());
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        double ev = std::max(es.eigenvalues()(n - 1 - k), 0.0);  // descending order
        G.row(k) = std::sqrt(ev) * es.eigenvectors().col(n - 1 - k).transpose();
    }
    double recon = (G.transpose() * G - M).cwiseAbs().maxCoeff();
    if (recon > 10 * tol) throw std::runtime_error("factor reconstruction drifted");
    std::vector<MultilinearPoly<double>> polys;
    for (int k = 0; k < n; ++k) {
        if (G.row(k).norm() < kRowPruneNorm) continue;
        MultilinearPoly<double> g(labels.empty() ? 0 : labels[0].n());
        for (int j = 0; j < n; ++j) g.add_term(labels[j], G(k, j));
        polys.push_back(std::move(g));
    }
    return polys;
}

}  // namespace fsos
