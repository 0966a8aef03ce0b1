#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srlab/good_embed.hpp"
#include "srlab/rng.hpp"

namespace srlab {

struct InsufficientYSpaceError : Error { using Error::Error; };

inline long long ceil_mul(Ratio a, long long n) {
    // ceil(a * n) for a >= 0, n >= 0
    return (a.num * n + a.den - 1) / a.den;
}

struct JoinednessReport {
    bool joined = true;
    long long s1 = 0, s2 = 0;
    // an edge-free pair (A in part one, B in part two) with |A| = s1, |B| = s2
    std::optional<std::pair<VertexSet, VertexSet>> witness;
    std::uint64_t checked = 0;
};

// alpha-joined: every A in part one with |A| >= ceil(alpha N1) and B in part
// two with |B| >= ceil(alpha N2) span at least one edge. Equivalent test on
// exact sizes: every A with |A| = s1 has |N(A)| >= N2 - s2 + 1. The witness A
// is lexicographically least, B the first s2 non-neighbors.
inline JoinednessReport is_alpha_joined(const BipartiteGraph& g, Ratio alpha, EnumerationBudget budget = {}) {
    if (alpha.num <= 0) throw std::invalid_argument("is_alpha_joined: alpha must be positive");
    JoinednessReport rep;
    const int n1 = g.size(Part::one), n2 = g.size(Part::two);
    rep.s1 = ceil_mul(alpha, n1);
    rep.s2 = ceil_mul(alpha, n2);
    if (rep.s1 > n1 || rep.s2 > n2 || rep.s1 == 0 || rep.s2 == 0) return rep;  // no qualifying sets

    const long long need = n2 - rep.s2 + 1;
    detail::combination_scan(
        g, Part::one, static_cast<int>(rep.s1), rep.checked, budget.max_nodes,
        [&](const std::vector<int>& chosen, const Bitset& nb) {
            if (nb.count() >= need) return false;
            Bitset b(n2);
            int taken = 0;
            for (int j = 0; j < n2 && taken < rep.s2; ++j)
                if (!nb.test(j)) { b.set(j); ++taken; }
            rep.joined = false;
            rep.witness = {VertexSet(Part::one, n1, chosen), VertexSet(Part::two, std::move(b))};
            return true;
        },
        [&](const std::vector<int>&, const Bitset& nb) { return nb.count() >= need; });
    return rep;
}

struct ExtractionLogEntry {
    Part part = Part::one;
    std::vector<int> X;  // original indices
    long long fresh = 0; // residual neighbors outside the reservoirs at removal time
};

struct RemovalOverflowError : Error {
    Part part;
    std::vector<int> removed1, removed2;  // original indices at the moment of overflow
    std::optional<std::pair<VertexSet, VertexSet>> witness;  // edge-free pair in the input graph

    RemovalOverflowError(Part p, std::vector<int> r1, std::vector<int> r2,
                         std::optional<std::pair<VertexSet, VertexSet>> w)
        : Error("expander extraction removed more than ceil(alpha N) vertices from part " +
                std::to_string(part_label(p))),
          part(p),
          removed1(std::move(r1)),
          removed2(std::move(r2)),
          witness(std::move(w)) {}
};

struct ExtractionResult {
    Ratio alpha;
    int N = 0;       // per-part size of the input
    long long s = 0; // ceil(alpha N)
    std::vector<int> Y1, Y2;             // reservoirs, original indices
    std::vector<int> removed1, removed2; // original indices, ascending
    std::vector<ExtractionLogEntry> log; // removal order
    std::shared_ptr<const BipartiteGraph> kept;
    std::vector<int> to_old1, to_old2;   // kept graph index -> original index
    std::vector<int> to_new1, to_new2;   // original index -> kept index, -1 if removed
    std::vector<int> yprime1, yprime2;   // surviving reservoir vertices, kept graph indices
};

// Repeatedly removes a smallest (then lexicographically least) set X within
// one part whose residual neighborhood outside the reservoirs has size at
// most ((1 - 4 alpha) / (2 alpha)) |X|, until none remains with |X| <= s.
// Removing more than s vertices from either part proves the input was not
// alpha-joined; that aborts with the removal record and an edge-free pair.
inline ExtractionResult extract_expander(const BipartiteGraph& g, Ratio alpha,
                                         std::optional<std::uint64_t> y_seed = std::nullopt,
                                         EnumerationBudget budget = {}) {
    const int N = g.size(Part::one);
    if (g.size(Part::two) != N) throw std::invalid_argument("extract_expander: parts must have equal size");
    if (alpha.num <= 0) throw std::invalid_argument("extract_expander: alpha must be positive");
    ExtractionResult res;
    res.alpha = alpha;
    res.N = N;
    res.s = ceil_mul(alpha, N);
    if (2 * res.s > N) throw std::invalid_argument("extract_expander: 2 ceil(alpha N) exceeds the part size");

    const long long twice_num = 2 * alpha.num;                 // removable iff
    const long long slack = alpha.den - 4 * alpha.num;         // 2 num fresh <= (den - 4 num) |X|

    auto pick_reservoir = [&](Part p, std::uint64_t seed) {
        if (!y_seed) {
            std::vector<int> low(static_cast<size_t>(2 * res.s));
            for (size_t i = 0; i < low.size(); ++i) low[i] = static_cast<int>(i);
            return low;
        }
        Rng rng(seed);
        return rng.sample_indices(N, static_cast<int>(2 * res.s));
    };
    res.Y1 = pick_reservoir(Part::one, y_seed.value_or(0));
    res.Y2 = pick_reservoir(Part::two, y_seed.value_or(0) + 1);

    Bitset alive[2] = {Bitset(N), Bitset(N)};
    alive[0].set_all();
    alive[1].set_all();
    Bitset ymask[2] = {Bitset::from_indices(N, res.Y1), Bitset::from_indices(N, res.Y2)};

    std::uint64_t nodes = 0;
    auto removed_of = [&](Part p) -> std::vector<int>& { return p == Part::one ? res.removed1 : res.removed2; };

    while (true) {
        bool removed_any = false;
        for (long long k = 1; k <= res.s && !removed_any; ++k) {
            for (Part part : {Part::one, Part::two}) {
                const Part op = other(part);
                Bitset mask = alive[part_index(op)];
                mask -= ymask[part_index(op)];
                std::vector<int> cands = alive[part_index(part)].to_indices();
                if (k > static_cast<long long>(cands.size())) continue;

                std::vector<int> chosen;
                std::vector<Bitset> stack;
                stack.emplace_back(N);
                auto rec = [&](auto&& self, size_t from) -> bool {
                    if (static_cast<long long>(chosen.size()) == k) {
                        long long fresh = stack.back().count_and(mask);
                        if (twice_num * fresh <= slack * k) {
                            res.log.push_back({part, chosen, fresh});
                            for (int v : chosen) {
                                alive[part_index(part)].reset(v);
                                removed_of(part).push_back(v);
                            }
                            return true;
                        }
                        return false;
                    }
                    for (size_t ci = from; ci < cands.size(); ++ci) {
                        if (++nodes > budget.max_nodes) throw EnumerationBudgetExceededError(budget.max_nodes);
                        int v = cands[ci];
                        Bitset next = stack.back() | g.row(part, v);
                        // residual fresh count only grows along the branch
                        if (twice_num * next.count_and(mask) > slack * k) continue;
                        chosen.push_back(v);
                        stack.push_back(std::move(next));
                        bool stop = self(self, ci + 1);
                        stack.pop_back();
                        chosen.pop_back();
                        if (stop) return true;
                    }
                    return false;
                };
                if (rec(rec, 0)) {
                    removed_any = true;
                    std::sort(removed_of(part).begin(), removed_of(part).end());
                    if (static_cast<long long>(removed_of(part).size()) > res.s) {
                        // the accumulated removals certify an edge-free pair
                        std::vector<int> A(removed_of(part).begin(), removed_of(part).begin() + res.s);
                        Bitset nb(N);
                        for (int a : A) nb |= g.row(part, a);
                        std::optional<std::pair<VertexSet, VertexSet>> witness;
                        if (N - nb.count() >= res.s) {
                            Bitset b(N);
                            int taken = 0;
                            for (int j = 0; j < N && taken < res.s; ++j)
                                if (!nb.test(j)) { b.set(j); ++taken; }
                            VertexSet As(part, N, A);
                            VertexSet Bs(other(part), std::move(b));
                            if (part == Part::one)
                                witness = {std::move(As), std::move(Bs)};
                            else
                                witness = {std::move(Bs), std::move(As)};
                        }
                        throw RemovalOverflowError(part, res.removed1, res.removed2, std::move(witness));
                    }
                    break;
                }
            }
        }
        if (!removed_any) break;
    }

    InducedSubgraph sub = induced_subgraph(g, alive[0], alive[1]);
    res.kept = std::make_shared<const BipartiteGraph>(std::move(sub.graph));
    res.to_old1 = std::move(sub.to_old1);
    res.to_old2 = std::move(sub.to_old2);
    res.to_new1 = std::move(sub.to_new1);
    res.to_new2 = std::move(sub.to_new2);
    for (int y : res.Y1)
        if (res.to_new1[y] >= 0) res.yprime1.push_back(res.to_new1[y]);
    for (int y : res.Y2)
        if (res.to_new2[y] >= 0) res.yprime2.push_back(res.to_new2[y]);
    std::sort(res.yprime1.begin(), res.yprime1.end());
    std::sort(res.yprime2.begin(), res.yprime2.end());
    return res;
}

// isolated pattern vertices on the lowest surviving reservoir slots
inline Embedding initial_null_embedding(const ExtractionResult& res, int r1, int r2) {
    if (r1 > static_cast<int>(res.yprime1.size()) || r2 > static_cast<int>(res.yprime2.size()))
        throw InsufficientYSpaceError("initial_null_embedding: reservoir has too few surviving vertices");
    PatternGraph p;
    std::vector<VertexRef> v1, v2;
    for (int i = 0; i < r1; ++i) v1.push_back(p.add_vertex(Part::one));
    for (int i = 0; i < r2; ++i) v2.push_back(p.add_vertex(Part::two));
    Embedding emb(res.kept, std::move(p));
    for (int i = 0; i < r1; ++i) emb.map_vertex(v1[i], res.yprime1[i]);
    for (int i = 0; i < r2; ++i) emb.map_vertex(v2[i], res.yprime2[i]);
    return emb;
}

struct ExtractionCheck {
    bool small_sets = false;      // |N(X)| > (1-4a)/(2a) |X| for 0 < |X| <= ceil(alpha N)
    bool large_sets = false;      // |N(X)| > (1-2a) N for |X| > ceil(alpha N)
    ExpansionCheck expansion;     // (floor(6 alpha N), (1-2a)/(6a))-expanding
    std::optional<VertexSet> witness;  // violating X for a failed set bullet
    long long witness_neighbors = 0;
    Ratio small_ratio;
    Ratio large_threshold;        // (1-2a) N, against the pre-extraction N
    int expansion_bound = 0;
    Ratio expansion_ratio;
    bool pass = false;
};

// Direct re-verification of what extraction promises about the kept graph:
// small sets expand by better than (1-4a)/(2a), every larger set sees more
// than (1-2a)N of the opposite part, and the whole thing is
// (floor(6 alpha N), (1-2a)/(6a))-expanding. N is the pre-extraction part
// size throughout.
inline ExtractionCheck verify_extraction(const ExtractionResult& res, EnumerationBudget budget = {}) {
    ExtractionCheck check;
    const long long s = res.s;
    check.small_ratio = Ratio(res.alpha.den - 4 * res.alpha.num, 2 * res.alpha.num);
    check.large_threshold = Ratio((res.alpha.den - 2 * res.alpha.num) * res.N, res.alpha.den);
    check.expansion_ratio = Ratio(res.alpha.den - 2 * res.alpha.num, 6 * res.alpha.num);
    check.expansion_bound = static_cast<int>(6 * res.alpha.num * res.N / res.alpha.den);
    const BipartiteGraph& g = *res.kept;
    std::uint64_t nodes = 0;
    auto scan = [&](long long lo, long long hi, auto&& holds) {
        for (Part part : {Part::one, Part::two}) {
            const int m = g.size(part);
            for (long long k = lo; k <= std::min<long long>(hi, m); ++k) {
                bool found = detail::combination_scan(
                    g, part, static_cast<int>(k), nodes, budget.max_nodes,
                    [&](const std::vector<int>& chosen, const Bitset& nb) {
                        if (holds(nb.count(), k)) return false;
                        check.witness = VertexSet(part, m, chosen);
                        check.witness_neighbors = nb.count();
                        return true;
                    },
                    // neighborhoods only grow along a branch
                    [&](const std::vector<int>&, const Bitset& nb) { return holds(nb.count(), k); });
                if (found) return false;
            }
        }
        return true;
    };
    check.small_sets =
        scan(1, s, [&](long long nb, long long k) { return count_greater(nb, check.small_ratio, k); });
    if (check.small_sets)
        check.large_sets = scan(s + 1, std::max(g.size(Part::one), g.size(Part::two)),
                                [&](long long nb, long long) { return count_greater(nb, check.large_threshold, 1); });
    check.expansion = is_expanding(g, check.expansion_bound, check.expansion_ratio, budget);
    check.pass = check.small_sets && check.large_sets && check.expansion.ok;
    return check;
}

}  // namespace srlab
