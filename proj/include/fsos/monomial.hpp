#pragma once

// Square-free monomials z^alpha over C_2^n: variable-width bitsets with the
// canonical order used everywhere a deterministic monomial order is needed
// (map iteration, truncation tie-breaks, Gram labels).

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsos/common.hpp"

namespace fsos {

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int n) : n_(n), w_((n + 63) / 64, 0) {
        if (n < 0 || n > kMaxVars) throw std::invalid_argument("monomial width out of range");
    }
    static Monomial of(int n, std::initializer_list<int> vars) {
        Monomial m(n);
        for (int v : vars) m.set(v);
        return m;
    }
    static Monomial of(int n, const std::vector<int>& vars) {
        Monomial m(n);
        for (int v : vars) m.set(v);
        return m;
    }

    int n() const { return n_; }

    void set(int var) {
        check(var);
        w_[(var - 1) >> 6] |= 1ull << ((var - 1) & 63);
    }
    bool test(int var) const {
        check(var);
        return (w_[(var - 1) >> 6] >> ((var - 1) & 63)) & 1u;
    }
    int weight() const {
        int c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }
    uint64_t word(size_t i) const { return i < w_.size() ? w_[i] : 0; }
    size_t words() const { return w_.size(); }

    // Low word as dense mask; valid only for n <= 64 (dense cube paths).
    uint64_t mask() const {
        if (n_ > 64) throw std::logic_error("monomial mask needs n <= 64");
        return w_.empty() ? 0 : w_[0];
    }

    Monomial operator^(const Monomial& o) const {
        if (n_ != o.n_) throw std::invalid_argument("monomial width mismatch");
        Monomial r(*this);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] ^= o.w_[i];
        return r;
    }
    bool operator==(const Monomial& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    std::vector<int> vars() const {
        std::vector<int> v;
        for (int i = 1; i <= n_; ++i)
            if (test(i)) v.push_back(i);
        return v;
    }

    std::string str() const {
        if (empty()) return "1";
        std::string s;
        for (int v : vars()) {
            if (!s.empty()) s += "*";
            s += "y" + std::to_string(v);
        }
        return s;
    }

private:
    void check(int var) const {
        if (var < 1 || var > n_) throw std::out_of_range("variable index out of range");
    }
    int n_ = 0;
    std::vector<uint64_t> w_;
};

// Canonical order: at the first variable where the monomials differ, the one
// missing that variable is smaller. The empty monomial is the global minimum.
inline bool canonical_less(const Monomial& a, const Monomial& b) {
    size_t nw = a.words() > b.words() ? a.words() : b.words();
    for (size_t i = 0; i < nw; ++i) {
        uint64_t aw = a.word(i), bw = b.word(i);
        if (aw != bw) {
            uint64_t d = aw ^ bw;
            uint64_t low = d & (~d + 1);
            return (aw & low) == 0;
        }
    }
    return false;
}

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return canonical_less(a, b); }
};

}  // namespace fsos
