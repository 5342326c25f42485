#pragma once

// CNF formulae: DIMACS parsing, canonical form, the sign-vector encoding tau.
// Weighted formulae are represented by clause repetition; repetitions are
// meaningful and preserved.

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsos/common.hpp"
#include "fsos/digest.hpp"

namespace fsos {

struct Literal {
    int var = 0;     // 1-based
    bool negated = false;

    int code() const { return negated ? -var : var; }
    bool operator==(const Literal& o) const = default;
};

struct Clause {
    std::vector<Literal> literals;  // canonical: sorted by var, no duplicates, no tautology

    int width() const { return static_cast<int>(literals.size()); }
};

struct CnfFormula {
    int n = 0;
    std::vector<Clause> clauses;  // file order, repetitions allowed and meaningful
    std::vector<std::string> warnings;

    int m() const { return static_cast<int>(clauses.size()); }
    int max_width() const {
        int k = 0;
        for (auto& c : clauses) k = std::max(k, c.width());
        return k;
    }
};

// Sorts literals by variable, merges duplicates, detects tautologies.
// Returns false (and clears the clause) when the clause is tautological.
inline bool canonicalize_clause(Clause& c) {
    std::sort(c.literals.begin(), c.literals.end(),
              [](const Literal& a, const Literal& b) { return a.var < b.var; });
    std::vector<Literal> out;
    for (const Literal& l : c.literals) {
        if (!out.empty() && out.back().var == l.var) {
            if (out.back().negated != l.negated) return false;  // x and not-x: tautology
            continue;                                           // duplicate literal: merge
        }
        out.push_back(l);
    }
    c.literals = std::move(out);
    return true;
}

inline CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CnfFormula f;
    bool header = false;
    long declared_m = 0;
    std::vector<int> pending;
    int lineno = 0;
    auto flush_clause = [&](int atline) {
        Clause c;
        for (int code : pending) {
            int v = code > 0 ? code : -code;
            if (v < 1 || v > f.n)
                throw std::invalid_argument("literal index out of range at line " +
                                            std::to_string(atline));
            c.literals.push_back({v, code < 0});
        }
        pending.clear();
        if (c.literals.empty()) throw std::invalid_argument("empty clause at line " + std::to_string(atline));
        if (canonicalize_clause(c))
            f.clauses.push_back(std::move(c));
        else
            f.warnings.push_back("dropped tautological clause ending at line " + std::to_string(atline));
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c" || tok[0] == 'c') continue;
        if (tok == "p") {
            std::string kind;
            if (header || !(ls >> kind >> f.n >> declared_m) || kind != "cnf" || f.n < 0)
                throw std::invalid_argument("malformed DIMACS header at line " + std::to_string(lineno));
            if (f.n > kMaxVars) throw std::invalid_argument("variable count exceeds supported maximum");
            header = true;
            continue;
        }
        if (!header) throw std::invalid_argument("clause before header at line " + std::to_string(lineno));
        ls.clear();
        ls.str(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0)
                flush_clause(lineno);
            else
                pending.push_back(lit);
        }
        if (ls.fail() && !ls.eof()) throw std::invalid_argument("bad token at line " + std::to_string(lineno));
    }
    if (!header) throw std::invalid_argument("missing DIMACS header");
    if (!pending.empty()) throw std::invalid_argument("final clause not 0-terminated");
    return f;
}

// Canonical DIMACS: header with the stored n/m, literals sorted within each
// clause, clauses in file order, LF endings. This is the digest pre-image.
inline std::string canonical_dimacs(const CnfFormula& f) {
    std::string out = "p cnf " + std::to_string(f.n) + " " + std::to_string(f.m()) + "\n";
    for (const Clause& c : f.clauses) {
        for (const Literal& l : c.literals) out += std::to_string(l.code()) + " ";
        out += "0\n";
    }
    return out;
}

inline std::string formula_digest(const CnfFormula& f) { return sha256_hex(canonical_dimacs(f)); }

// tau: truth assignment -> sign vector. False |-> +1, True |-> -1 (i.e. 1-2x).
inline std::vector<int> tau(const std::vector<bool>& assignment) {
    std::vector<int> y(assignment.size());
    for (size_t i = 0; i < assignment.size(); ++i) y[i] = assignment[i] ? -1 : 1;
    return y;
}

// Direct semantics used as ground truth in tests and refusal diagnostics.
inline bool clause_falsified(const Clause& c, const std::vector<bool>& assignment) {
    for (const Literal& l : c.literals) {
        bool val = assignment[l.var - 1];
        if (l.negated ? !val : val) return false;
    }
    return true;
}

inline long count_falsified(const CnfFormula& f, const std::vector<bool>& assignment) {
    long cnt = 0;
    for (const Clause& c : f.clauses)
        if (clause_falsified(c, assignment)) ++cnt;
    return cnt;
}

}  // namespace fsos
