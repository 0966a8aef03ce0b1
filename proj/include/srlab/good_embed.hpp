#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "srlab/embedding.hpp"

namespace srlab {

struct NoCandidateError : Error { using Error::Error; };
struct NoGoodCandidateError : Error { using Error::Error; };
struct SigmaTooShortError : Error { using Error::Error; };
struct DegreeTooSmallError : Error { using Error::Error; };

// R(X) = |N(X) \ image| - sum_{x in X} (D - deg(preimage(x))) - |image cap X|,
// with degree 0 for unused host vertices. X lies inside one host part. The
// degree budget D may be rational; R is then rational and comparisons exact.
inline Ratio deficiency(const Embedding& emb, const VertexSet& X, Ratio D) {
    long long fresh = emb.fresh_neighbor_count(X);
    long long k = X.count();
    long long degsum = 0;
    X.bits.for_each([&](int x) { degsum += emb.pattern_degree_at(X.part, x); });
    long long occ = X.bits.count_and(emb.image(X.part));
    // fresh - (D*k - degsum) - occ
    return Ratio(fresh + degsum - occ) - D * Ratio(k);
}

struct DeficiencyWitness {
    VertexSet X;
    Ratio R;
};

struct GoodnessReport {
    bool pass = true;
    std::optional<DeficiencyWitness> witness;
    std::uint64_t checked = 0;
    bool partial = false;  // true when a size cap or part filter was applied
};

struct VerifyMode {
    int max_size = -1;  // -1: no cap beyond n
    std::optional<Part> only_part;

    static VerifyMode Exhaustive() { return {}; }
    static VerifyMode Capped(int max_size, std::optional<Part> part = std::nullopt) { return {max_size, part}; }
};

// (n, D)-goodness: R(X) >= 0 for every nonempty per-part X with |X| <= n.
// Witness search order is (size, part, lex); the first violation found is
// minimal. The prune is sound: along a branch |N(X) \ image| only grows,
// the degree sum is nonnegative, and occupancy is at most min(k, |image|).
inline GoodnessReport verify_good(const Embedding& emb, int n, Ratio D, VerifyMode mode = {},
                                  EnumerationBudget budget = {}) {
    GoodnessReport report;
    report.partial = mode.max_size >= 0 || mode.only_part.has_value();
    const auto& host = emb.host();

    for (int k = 1; k <= n; ++k) {
        if (mode.max_size >= 0 && k > mode.max_size) break;
        for (Part part : {Part::one, Part::two}) {
            if (mode.only_part && *mode.only_part != part) continue;
            const int m = host.size(part);
            if (k > m) continue;
            const Bitset& img_same = emb.image(part);
            const Bitset& img_other = emb.image(other(part));
            const long long img_count = img_same.count();

            std::vector<int> chosen;
            chosen.reserve(k);
            std::vector<Bitset> nb_stack;
            nb_stack.reserve(k + 1);
            nb_stack.emplace_back(host.size(other(part)));

            auto rec = [&](auto&& self, int from) -> bool {
                const int depth = static_cast<int>(chosen.size());
                if (depth == k) {
                    long long fresh = nb_stack.back().count_andnot(img_other);
                    long long degsum = 0, occ = 0;
                    for (int x : chosen) {
                        degsum += emb.pattern_degree_at(part, x);
                        if (img_same.test(x)) ++occ;
                    }
                    Ratio R = Ratio(fresh + degsum - occ) - D * Ratio(k);
                    if (R < Ratio(0)) {
                        report.pass = false;
                        report.witness = DeficiencyWitness{VertexSet(part, m, chosen), R};
                        return true;
                    }
                    return false;
                }
                for (int v = from; v <= m - (k - depth); ++v) {
                    if (++report.checked > budget.max_nodes) throw EnumerationBudgetExceededError(budget.max_nodes);
                    Bitset nb = nb_stack.back() | host.row(part, v);
                    long long fresh_now = nb.count_andnot(img_other);
                    // R(final) >= fresh_now - D*k - min(k, |image|)
                    bool prune = count_at_least(fresh_now - std::min<long long>(k, img_count), D, k);
                    if (!prune) {
                        chosen.push_back(v);
                        nb_stack.push_back(std::move(nb));
                        bool stop = self(self, v + 1);
                        nb_stack.pop_back();
                        chosen.pop_back();
                        if (stop) return true;
                    }
                }
                return false;
            };
            if (rec(rec, 0)) return report;
        }
    }
    return report;
}

struct ExtendMode {
    bool certified = true;
    int s_max = 2;

    static ExtendMode Certified() { return {true, 0}; }
    static ExtendMode Greedy(int s_max = 2) { return {false, s_max}; }
};

// Pendant extension: adds one pattern leaf under w and maps it onto a host
// neighbor of phi(w). Candidates are fresh neighbors ordered by descending
// |N(a) \ image|, ties by ascending index. Certified mode keeps the first
// candidate for which the extended embedding passes exhaustive verify_good(2n, D);
// greedy mode checks only subsets of size <= s_max in phi(w)'s part, the one
// part where R can drop when a pendant is added.
inline Embedding extend_leaf(const Embedding& emb, VertexRef w, int n, Ratio D, ExtendMode mode = {},
                             int* candidates_tried = nullptr, EnumerationBudget budget = {}) {
    if (!emb.mapped(w)) throw InvalidVertexError("extend_leaf: w must be mapped");
    if (count_greater(emb.pattern().degree(w), D - Ratio(1), 1))
        throw InvalidVertexError("extend_leaf: deg(w) exceeds D - 1");
    const auto& host = emb.host();
    const int hw = emb.image_of(w);
    const Part leaf_part = other(w.part);

    Bitset cand = host.row(w.part, hw);
    cand -= emb.image(leaf_part);
    if (cand.none()) throw NoCandidateError("extend_leaf: no unused host neighbor at phi(w)");

    struct Scored {
        int fresh;
        int index;
    };
    std::vector<Scored> order;
    order.reserve(cand.count());
    const Bitset& img_back = emb.image(w.part);
    cand.for_each([&](int a) { order.push_back({host.row(leaf_part, a).count_andnot(img_back), a}); });
    std::stable_sort(order.begin(), order.end(), [](const Scored& x, const Scored& y) {
        if (x.fresh != y.fresh) return x.fresh > y.fresh;
        return x.index < y.index;
    });

    int tried = 0;
    for (const auto& c : order) {
        ++tried;
        Embedding next = emb;
        next.extend(w, c.index);
        GoodnessReport check =
            mode.certified ? verify_good(next, 2 * n, D, VerifyMode::Exhaustive(), budget)
                           : verify_good(next, 2 * n, D, VerifyMode::Capped(mode.s_max, w.part), budget);
        if (check.pass) {
            if (candidates_tried) *candidates_tried = tried;
            return next;
        }
    }
    throw NoGoodCandidateError("extend_leaf: no candidate passes the goodness check");
}

// Deletes pattern vertices in the given order; every deletion target must be
// present with degree <= 1 at its turn.
inline Embedding prune(Embedding emb, const std::vector<VertexRef>& order) {
    for (VertexRef v : order) emb.remove_vertex(v);
    return emb;
}

enum class ParityRole { odd, even_j1, even_j2 };

inline const char* to_string(ParityRole r) {
    switch (r) {
        case ParityRole::odd: return "odd";
        case ParityRole::even_j1: return "even_j1";
        default: return "even_j2";
    }
}

// Path-plus-branching-tree shape grown for one endpoint of a subdivided edge:
// a path of role-dependent length away from the root, then a (D-1)-ary
// leftmost-filled tree with exactly leaf_target leaves, all at height
// branch_height above the path end.
struct TreeBlueprint {
    int sigma = 0;
    ParityRole role = ParityRole::odd;
    int degree = 0;
    int leaf_target = 0;
    int path_length = 0;
    int branch_height = 0;        // k
    std::vector<int> parent;      // parent[0] = -1 (root = existing pattern vertex)
    std::vector<int> depth;       // depth[0] = 0
    std::vector<int> leaves;      // creation order; all at depth path_length + branch_height

    int size() const { return static_cast<int>(parent.size()); }
    int root_to_leaf() const { return path_length + branch_height; }
};

// smallest k with (D-1)^k >= leaf_target
inline int branch_height_for(int degree, int leaf_target) {
    int k = 0;
    long long reach = 1;
    while (reach < leaf_target) {
        reach *= degree - 1;
        ++k;
    }
    return k;
}

inline TreeBlueprint build_tree_blueprint(int sigma, ParityRole role, int degree, int leaf_target) {
    if (degree < 3) throw DegreeTooSmallError("build_tree_blueprint: degree >= 3 required");
    if (leaf_target < 1) throw std::invalid_argument("build_tree_blueprint: leaf_target >= 1 required");
    if (sigma < 1) throw std::invalid_argument("build_tree_blueprint: sigma >= 1 required");

    TreeBlueprint bp;
    bp.sigma = sigma;
    bp.role = role;
    bp.degree = degree;
    bp.leaf_target = leaf_target;
    bp.branch_height = branch_height_for(degree, leaf_target);
    const int k = bp.branch_height;

    if (role == ParityRole::odd) {
        if (sigma % 2 == 0) throw std::invalid_argument("odd role requires odd sigma");
        if (sigma < 2 * k + 1) throw SigmaTooShortError("sigma < 2k + 1");
        bp.path_length = (sigma - 2 * k - 1) / 2;
    } else {
        if (sigma % 2 != 0) throw std::invalid_argument("even role requires even sigma");
        if (sigma / 2 - k - 1 < 0) throw SigmaTooShortError("sigma/2 - k - 1 < 0");
        bp.path_length = role == ParityRole::even_j1 ? sigma / 2 - k - 1 : sigma / 2 - k;
    }

    bp.parent.push_back(-1);
    bp.depth.push_back(0);
    int tip = 0;
    for (int i = 0; i < bp.path_length; ++i) {
        bp.parent.push_back(tip);
        bp.depth.push_back(i + 1);
        tip = bp.size() - 1;
    }

    // leftmost-filled (degree-1)-ary tree below `tip`
    std::vector<long long> cap(k + 1, 1);
    for (int d = k - 1; d >= 0; --d) cap[d] = cap[d + 1] * (degree - 1);

    auto alloc = [&](auto&& self, int node, int d, int count) -> void {
        if (d == k) {
            bp.leaves.push_back(node);
            return;
        }
        int remaining = count;
        while (remaining > 0) {
            int take = static_cast<int>(std::min<long long>(remaining, cap[d + 1]));
            bp.parent.push_back(node);
            bp.depth.push_back(bp.depth[node] + 1);
            self(self, bp.size() - 1, d + 1, take);
            remaining -= take;
        }
    };
    alloc(alloc, tip, 0, leaf_target);
    return bp;
}

}  // namespace srlab
