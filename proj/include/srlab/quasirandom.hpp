#pragma once

#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "srlab/bigraph.hpp"
#include "srlab/rng.hpp"

namespace srlab {

struct QuasiParams {
    int N = 0;
    double p = 0.5;
    double epsilon = 0.25;
    double delta = 0.5;
    int c3n = 1;  // lower bound on |U|, |W| in discrepancy checks

    void validate() const {
        if (N < 1) throw std::invalid_argument("QuasiParams: N >= 1 required");
        if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("QuasiParams: p in (0,1] required");
        if (c3n < 1 || c3n > N) throw std::invalid_argument("QuasiParams: 1 <= c3n <= N required");
    }
};

// Random host on N+N vertices. Every pair decision is keyed by (seed, i, j),
// so the graph is a pure function of (N, p, seed) regardless of fill order.
inline BipartiteGraph sample_host(int N, double p, std::uint64_t seed, int jobs = 1) {
    if (N < 0) throw std::invalid_argument("sample_host: N >= 0 required");
    std::vector<std::vector<int>> rows(N);
    auto fill_range = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i)
            for (int j = 0; j < N; ++j)
                if (to_unit(counter_hash(seed, i, j)) < p) rows[i].push_back(j);
    };
    if (jobs <= 1 || N < 2) {
        fill_range(0, N);
    } else {
        std::vector<std::thread> threads;
        int per = (N + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            int lo = t * per, hi = std::min(N, lo + per);
            if (lo < hi) threads.emplace_back(fill_range, lo, hi);
        }
        for (auto& th : threads) th.join();
    }
    BipartiteGraph::Builder b(N, N);
    for (int i = 0; i < N; ++i)
        for (int j : rows[i]) b.add_edge(i, j);
    return std::move(b).build();
}

struct DensityReport {
    bool pass = false;
    long long edges = 0;
    double expected = 0.0;
    double lo = 0.0, hi = 0.0;
};

// e(G) within (1 +- n^(eps - 1/2)) p N^2
inline DensityReport check_density(const BipartiteGraph& g, const QuasiParams& q, long long n) {
    q.validate();
    if (n < 1) throw std::invalid_argument("check_density: n >= 1 required");
    DensityReport r;
    r.edges = g.edge_count();
    r.expected = q.p * static_cast<double>(q.N) * static_cast<double>(q.N);
    double spread = std::pow(static_cast<double>(n), q.epsilon - 0.5) * r.expected;
    r.lo = r.expected - spread;
    r.hi = r.expected + spread;
    r.pass = r.lo <= static_cast<double>(r.edges) && static_cast<double>(r.edges) <= r.hi;
    return r;
}

struct DiscrepancyReport {
    bool pass = false;
    std::uint64_t checked_pairs = 0;
    double max_relative_deviation = 0.0;
    std::vector<int> worst_U, worst_W;
    std::string mode;
};

struct DiscrepancyMode {
    bool exhaustive = true;
    int trials = 10000;
    std::uint64_t seed = 0;

    static DiscrepancyMode Exhaustive() { return {}; }
    static DiscrepancyMode Sampled(int trials, std::uint64_t seed) { return {false, trials, seed}; }
};

namespace detail {

template <typename F>
void for_each_combination(int m, int k, F&& f) {
    if (k > m) return;
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    while (true) {
        f(c);
        int i = k - 1;
        while (i >= 0 && c[i] == m - k + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace detail

// Max over qualifying pairs (|U|, |W| >= c3n) of |e(U,W) - p|U||W|| / (p|U||W|).
// Pass iff the maximum is <= q.delta. Exhaustive mode scans pairs in
// (size, lex) order per part; sampled mode draws `trials` seeded pairs.
inline DiscrepancyReport check_discrepancy(const BipartiteGraph& g, const QuasiParams& q, DiscrepancyMode mode,
                                           EnumerationBudget budget = {}) {
    q.validate();
    const int N = q.N;
    if (g.size(Part::one) != N || g.size(Part::two) != N)
        throw std::invalid_argument("check_discrepancy: host must be N+N");

    DiscrepancyReport r;
    r.mode = mode.exhaustive ? "exhaustive" : "sampled";

    auto consider = [&](const std::vector<int>& U, const Bitset& Wbits, const std::vector<int>& W) {
        long long e = 0;
        for (int u : U) e += g.row(Part::one, u).count_and(Wbits);
        double expect = q.p * static_cast<double>(U.size()) * static_cast<double>(W.size());
        double dev = std::abs(static_cast<double>(e) - expect) / expect;
        if (dev > r.max_relative_deviation) {
            r.max_relative_deviation = dev;
            r.worst_U = U;
            r.worst_W = W;
        }
    };

    if (mode.exhaustive) {
        // collect part-2 candidate sets once, in (size, lex) order
        std::vector<std::pair<Bitset, std::vector<int>>> wsets;
        for (int kw = q.c3n; kw <= N; ++kw)
            detail::for_each_combination(N, kw, [&](const std::vector<int>& w) {
                wsets.emplace_back(Bitset::from_indices(N, w), w);
            });
        for (int ku = q.c3n; ku <= N; ++ku) {
            detail::for_each_combination(N, ku, [&](const std::vector<int>& u) {
                for (auto& [wb, w] : wsets) {
                    if (++r.checked_pairs > budget.max_nodes) throw EnumerationBudgetExceededError(budget.max_nodes);
                    consider(u, wb, w);
                }
            });
        }
    } else {
        Rng rng(mode.seed);
        for (int t = 0; t < mode.trials; ++t) {
            int ku = rng.range(q.c3n, N);
            int kw = rng.range(q.c3n, N);
            auto u = rng.sample_indices(N, ku);
            auto w = rng.sample_indices(N, kw);
            ++r.checked_pairs;
            consider(u, Bitset::from_indices(N, w), w);
        }
    }
    r.pass = r.max_relative_deviation <= q.delta;
    return r;
}

}  // namespace srlab
