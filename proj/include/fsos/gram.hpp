#pragma once

// Gram-matrix constraint assembly for the certificate SDPs, the independent
// l1-residual recomputation, and SDPA sparse-format interchange.

#include <Eigen/Dense>

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsos/common.hpp"
#include "fsos/monomial.hpp"
#include "fsos/poly.hpp"

namespace fsos {

enum class GramMode { FEASIBILITY_RATIONAL, MIN_L1_POLY };

struct GramProblem {
    MultilinearPoly<double> f;
    std::vector<Monomial> S, T;        // deduplicated, canonical order
    std::vector<Monomial> lambda;      // constraint index set
    GramMode mode = GramMode::FEASIBILITY_RATIONAL;

    struct UEntry { int lam, i, j; };             // sum_{a^b=lam} U_ab
    struct VEntry { int lam, i, j; double fg; };  // f_gamma with gamma = lam ^ t_i ^ t_j
    std::vector<UEntry> u_entries;
    std::vector<VEntry> v_entries;
};

struct GramSolution {
    Eigen::MatrixXd U, V;
    double l1_residual = 0;                  // recomputed, never solver-reported
    std::pair<double, double> psd_margins;   // (lambda_min U, lambda_min V)
};

inline std::vector<Monomial> dedup_canonical(std::vector<Monomial> v) {
    std::sort(v.begin(), v.end(), MonomialLess{});
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline GramProblem assemble(const MultilinearPoly<double>& f, std::vector<Monomial> S,
                            std::vector<Monomial> T, GramMode mode) {
    GramProblem p;
    p.f = f;
    p.mode = mode;
    if (mode == GramMode::MIN_L1_POLY) T = {Monomial(f.n)};  // V pinned to the 1x1 identity
    p.S = dedup_canonical(std::move(S));
    p.T = dedup_canonical(std::move(T));
    if (p.S.empty() || p.T.empty()) throw std::invalid_argument("empty numerator/denominator support");
    std::map<Monomial, int, MonomialLess> lam_index;
    std::set<Monomial, MonomialLess> lam_set;
    for (size_t i = 0; i < p.S.size(); ++i)
        for (size_t j = i; j < p.S.size(); ++j) lam_set.insert(p.S[i] ^ p.S[j]);
    for (auto& [g, c] : f.terms)
        for (size_t i = 0; i < p.T.size(); ++i)
            for (size_t j = i; j < p.T.size(); ++j) lam_set.insert(g ^ p.T[i] ^ p.T[j]);
    p.lambda.assign(lam_set.begin(), lam_set.end());
    for (size_t k = 0; k < p.lambda.size(); ++k) lam_index.emplace(p.lambda[k], static_cast<int>(k));
    for (size_t i = 0; i < p.S.size(); ++i)
        for (size_t j = i; j < p.S.size(); ++j)
            p.u_entries.push_back({lam_index.at(p.S[i] ^ p.S[j]), static_cast<int>(i), static_cast<int>(j)});
    for (auto& [g, c] : f.terms)
        for (size_t i = 0; i < p.T.size(); ++i)
            for (size_t j = i; j < p.T.size(); ++j)
                p.v_entries.push_back({lam_index.at(g ^ p.T[i] ^ p.T[j]), static_cast<int>(i),
                                       static_cast<int>(j), to_double(c)});
    return p;
}

// r_lam = sum_{a^b=lam} U_ab - sum_gamma f_gamma sum_{t_i^t_j=lam^gamma} V_ij.
inline Eigen::VectorXd gram_residual_vector(const GramProblem& p, const Eigen::MatrixXd& U,
                                            const Eigen::MatrixXd& V) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<long>(p.lambda.size()));
    for (const auto& e : p.u_entries) r(e.lam) += (e.i == e.j ? 1.0 : 2.0) * U(e.i, e.j);
    for (const auto& e : p.v_entries) r(e.lam) -= (e.i == e.j ? 1.0 : 2.0) * e.fg * V(e.i, e.j);
    return r;
}

inline double gram_l1_residual(const GramProblem& p, const Eigen::MatrixXd& U,
                               const Eigen::MatrixXd& V) {
    return gram_residual_vector(p, U, V).lpNorm<1>();
}

// SDPA sparse export. Feasibility mode substitutes Vt = V - I/|T| (so both
// blocks are plain PSD variables) which turns the right-hand side of the
// constraint indexed by lam into f_lam. MIN_L1_POLY adds a diagonal block of
// slack pairs and minimizes their sum; the 1x1 V block is pinned to 1 by an
// extra constraint.
inline std::string export_sdpa(const GramProblem& p) {
    std::ostringstream out;
    out.precision(17);
    const int nl = static_cast<int>(p.lambda.size());
    const int ns = static_cast<int>(p.S.size());
    const int nt = static_cast<int>(p.T.size());
    auto fcoeff = [&](const Monomial& m) {
        auto it = p.f.terms.find(m);
        return it == p.f.terms.end() ? 0.0 : it->second;
    };
    if (p.mode == GramMode::FEASIBILITY_RATIONAL) {
        out << "* FSOS Gram feasibility problem\n";
        out << "* block 1 = U (" << ns << "x" << ns << "), block 2 = Vt = V - I/|T| (" << nt << "x"
            << nt << ")\n";
        out << "* constraint k matches coefficient lambda_k; recover V = Vt + I/" << nt << "\n";
        out << nl << "\n2\n" << ns << " " << nt << "\n";
        for (int k = 0; k < nl; ++k) out << fcoeff(p.lambda[k]) << (k + 1 == nl ? "\n" : " ");
        for (const auto& e : p.u_entries)
            out << e.lam + 1 << " 1 " << e.i + 1 << " " << e.j + 1 << " 1\n";
        for (const auto& e : p.v_entries)
            out << e.lam + 1 << " 2 " << e.i + 1 << " " << e.j + 1 << " " << e.fg << "\n";
    } else {
        out << "* FSOS min-l1 polynomial problem\n";
        out << "* block 1 = U (" << ns << "x" << ns << "), block 2 = V (1x1, pinned to 1 by the last\n";
        out << "* constraint), block 3 = diagonal slack pairs (s+_k, s-_k) per lambda_k;\n";
        out << "* objective = sum of slacks = l1 residual\n";
        out << nl + 1 << "\n3\n" << ns << " 1 -" << 2 * nl << "\n";
        for (int k = 0; k < nl; ++k) out << "0 ";
        out << "1\n";
        // F0: objective = sum of slack diagonals
        for (int k = 0; k < 2 * nl; ++k) out << "0 3 " << k + 1 << " " << k + 1 << " 1\n";
        for (const auto& e : p.u_entries)
            out << e.lam + 1 << " 1 " << e.i + 1 << " " << e.j + 1 << " 1\n";
        for (const auto& e : p.v_entries)
            out << e.lam + 1 << " 2 " << e.i + 1 << " " << e.j + 1 << " " << e.fg << "\n";
        for (int k = 0; k < nl; ++k) {
            out << k + 1 << " 3 " << 2 * k + 1 << " " << 2 * k + 1 << " 1\n";
            out << k + 1 << " 3 " << 2 * k + 2 << " " << 2 * k + 2 << " -1\n";
        }
        out << nl + 1 << " 2 1 1 1\n";
    }
    return out.str();
}

// Imports a solution as whitespace-separated lines "<block> <i> <j> <value>"
// (1-based, upper triangle). Feasibility-mode block 2 is read as Vt and the
// I/|T| shift is added back. The returned solution carries independently
// recomputed residual; PSD margins are the caller's to verify via solve-side
// checks (see psd_margins in solve.hpp).
inline GramSolution import_solution(const GramProblem& p, const std::string& text) {
    const int ns = static_cast<int>(p.S.size());
    const int nt = static_cast<int>(p.T.size());
    GramSolution s;
    s.U = Eigen::MatrixXd::Zero(ns, ns);
    s.V = Eigen::MatrixXd::Zero(nt, nt);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        int blk, i, j;
        double v;
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "*" || first[0] == '*') continue;
        std::istringstream ls2(line);
        if (!(ls2 >> blk >> i >> j >> v)) throw std::invalid_argument("bad solution line: " + line);
        if (blk == 1) {
            if (i < 1 || j < 1 || i > ns || j > ns) throw std::invalid_argument("U index out of range");
            s.U(i - 1, j - 1) = v;
            s.U(j - 1, i - 1) = v;
        } else if (blk == 2) {
            if (i < 1 || j < 1 || i > nt || j > nt) throw std::invalid_argument("V index out of range");
            s.V(i - 1, j - 1) = v;
            s.V(j - 1, i - 1) = v;
        }  // slack blocks are ignored; the residual is recomputed
    }
    if (p.mode == GramMode::FEASIBILITY_RATIONAL)
        s.V += Eigen::MatrixXd::Identity(nt, nt) / nt;
    s.l1_residual = gram_l1_residual(p, s.U, s.V);
    return s;
}

}  // namespace fsos
