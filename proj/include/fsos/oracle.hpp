#pragma once

// Exhaustive MAX-SAT oracle: exact L_min/L_max by Gray-code enumeration with
// incremental per-clause satisfied-literal counters. Deterministic for every
// thread count: the cube is split into fixed blocks by the high bits and the
// per-block results are merged in block order.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fsos/cnf.hpp"
#include "fsos/common.hpp"

namespace fsos {

struct OracleResult {
    long l_min = 0, l_max = 0;
    std::vector<bool> witness_min, witness_max;
};

namespace oracle_detail {

struct BlockResult {
    long mn, mx;
    uint64_t argmin, argmax;
};

struct Occurrence {
    int clause;
    bool negated;
};

inline BlockResult scan_block(const CnfFormula& f, int low_bits, uint64_t base,
                              const std::vector<std::vector<Occurrence>>& occ) {
    const int m = f.m();
    std::vector<int> sat(m, 0);
    long falsified = 0;
    for (int c = 0; c < m; ++c) {
        for (const Literal& l : f.clauses[c].literals) {
            bool bit = (base >> (l.var - 1)) & 1;
            if (l.negated ? !bit : bit) ++sat[c];
        }
        if (sat[c] == 0) ++falsified;
    }
    BlockResult r{falsified, falsified, base, base};
    uint64_t x = base;
    uint64_t steps = 1ull << low_bits;
    for (uint64_t i = 1; i < steps; ++i) {
        int b = std::countr_zero(i);
        uint64_t bit = 1ull << b;
        x ^= bit;
        bool newval = (x >> b) & 1;
        for (const Occurrence& o : occ[b]) {
            bool lit_true = o.negated ? !newval : newval;
            if (lit_true) {
                if (sat[o.clause]++ == 0) --falsified;
            } else {
                if (--sat[o.clause] == 0) ++falsified;
            }
        }
        if (falsified < r.mn) { r.mn = falsified; r.argmin = x; }
        if (falsified > r.mx) { r.mx = falsified; r.argmax = x; }
    }
    return r;
}

}  // namespace oracle_detail

inline OracleResult oracle_bounds(const CnfFormula& f, int limit = -1, int threads = -1) {
    if (limit < 0) limit = env_oracle_limit();
    if (threads <= 0) threads = env_threads();
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    const int n = f.n;
    if (n > limit) throw std::invalid_argument("oracle limit exceeded: n=" + std::to_string(n) +
                                               " > " + std::to_string(limit));
    std::vector<std::vector<oracle_detail::Occurrence>> occ(std::max(n, 1));
    for (int c = 0; c < f.m(); ++c)
        for (const Literal& l : f.clauses[c].literals) occ[l.var - 1].push_back({c, l.negated});

    // Fixed split independent of the thread count keeps results bit-identical.
    const int high = n >= 12 ? 8 : 0;
    const int low = n - high;
    const uint64_t blocks = 1ull << high;
    std::vector<oracle_detail::BlockResult> results(blocks);
    auto worker = [&](uint64_t begin, uint64_t end) {
        for (uint64_t b = begin; b < end; ++b)
            results[b] = oracle_detail::scan_block(f, low, b << low, occ);
    };
    if (threads == 1 || blocks == 1) {
        worker(0, blocks);
    } else {
        std::vector<std::thread> pool;
        uint64_t per = (blocks + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            uint64_t begin = per * t, end = std::min(blocks, per * (t + 1));
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    oracle_detail::BlockResult best = results[0];
    for (uint64_t b = 1; b < blocks; ++b) {
        if (results[b].mn < best.mn) { best.mn = results[b].mn; best.argmin = results[b].argmin; }
        if (results[b].mx > best.mx) { best.mx = results[b].mx; best.argmax = results[b].argmax; }
    }
    OracleResult out;
    out.l_min = best.mn;
    out.l_max = best.mx;
    out.witness_min.resize(n);
    out.witness_max.resize(n);
    for (int j = 0; j < n; ++j) {
        out.witness_min[j] = (best.argmin >> j) & 1;
        out.witness_max[j] = (best.argmax >> j) & 1;
    }
    return out;
}

}  // namespace fsos
