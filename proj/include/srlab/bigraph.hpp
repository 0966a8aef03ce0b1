#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "srlab/bitset.hpp"
#include "srlab/core.hpp"

namespace srlab {

struct VertexSet {
    Part part = Part::one;
    Bitset bits;

    VertexSet() = default;
    VertexSet(Part p, Bitset b) : part(p), bits(std::move(b)) {}
    VertexSet(Part p, int universe, const std::vector<int>& idx) : part(p), bits(Bitset::from_indices(universe, idx)) {}

    int count() const { return bits.count(); }
    std::vector<int> indices() const { return bits.to_indices(); }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
};

// Immutable bipartite graph. Adjacency is one bit row per vertex; row(Part::one, i)
// has one bit per part-2 vertex and vice versa. Build through Builder or from_edges.
class BipartiteGraph {
  public:
    class Builder {
      public:
        Builder(int size1, int size2) : n1_(size1), n2_(size2), adj1_(size1, Bitset(size2)), adj2_(size2, Bitset(size1)) {
            if (size1 < 0 || size2 < 0) throw std::invalid_argument("negative part size");
        }

        Builder& add_edge(int i, int j) {
            if (i < 0 || i >= n1_ || j < 0 || j >= n2_)
                throw InvalidVertexError("edge (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
            if (adj1_[i].test(j))
                throw DuplicateEdgeError("edge (" + std::to_string(i) + "," + std::to_string(j) + ") already present");
            adj1_[i].set(j);
            adj2_[j].set(i);
            ++edges_;
            return *this;
        }

        Builder& add_edge(VertexRef u, VertexRef v) {
            if (u.part == v.part) throw SamePartError("both endpoints in part " + std::to_string(part_label(u.part)));
            if (u.part == Part::two) std::swap(u, v);
            return add_edge(u.index, v.index);
        }

        bool has_edge(int i, int j) const { return i >= 0 && i < n1_ && j >= 0 && j < n2_ && adj1_[i].test(j); }

        BipartiteGraph build() && {
            return BipartiteGraph(n1_, n2_, std::move(adj1_), std::move(adj2_), edges_);
        }

      private:
        int n1_, n2_;
        std::vector<Bitset> adj1_, adj2_;
        long long edges_ = 0;
    };

    BipartiteGraph() : BipartiteGraph(0, 0, {}, {}, 0) {}

    static BipartiteGraph empty(int size1, int size2) { return Builder(size1, size2).build(); }

    static BipartiteGraph from_edges(int size1, int size2, const std::vector<std::pair<int, int>>& edges) {
        Builder b(size1, size2);
        for (auto [i, j] : edges) b.add_edge(i, j);
        return std::move(b).build();
    }

    static BipartiteGraph complete(int size1, int size2) {
        Builder b(size1, size2);
        for (int i = 0; i < size1; ++i)
            for (int j = 0; j < size2; ++j) b.add_edge(i, j);
        return std::move(b).build();
    }

    int size(Part p) const { return p == Part::one ? n1_ : n2_; }
    long long edge_count() const { return edges_; }

    const Bitset& row(Part p, int i) const { return p == Part::one ? adj1_[i] : adj2_[i]; }
    int degree(Part p, int i) const { return row(p, i).count(); }
    bool has_edge(int i, int j) const { return adj1_[i].test(j); }

    // sorted canonical edge list
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<size_t>(edges_));
        for (int i = 0; i < n1_; ++i) adj1_[i].for_each([&](int j) { out.emplace_back(i, j); });
        return out;
    }

  private:
    BipartiteGraph(int n1, int n2, std::vector<Bitset> a1, std::vector<Bitset> a2, long long edges)
        : n1_(n1), n2_(n2), adj1_(std::move(a1)), adj2_(std::move(a2)), edges_(edges) {}

    int n1_, n2_;
    std::vector<Bitset> adj1_, adj2_;
    long long edges_;
};

inline VertexSet neighborhood(const BipartiteGraph& g, const VertexSet& X) {
    Bitset acc(g.size(other(X.part)));
    X.bits.for_each([&](int i) { acc |= g.row(X.part, i); });
    return VertexSet(other(X.part), std::move(acc));
}

// e(A, B) for A in part 1, B in part 2
inline long long edge_count_between(const BipartiteGraph& g, const VertexSet& A, const VertexSet& B) {
    if (A.part != Part::one || B.part != Part::two) throw std::invalid_argument("edge_count_between: A must be part 1, B part 2");
    long long total = 0;
    A.bits.for_each([&](int i) { total += g.row(Part::one, i).count_and(B.bits); });
    return total;
}

struct BoundsViolation {
    enum class Kind { part_size, degree };
    Kind kind;
    Part part;
    int index;   // vertex for degree violations, -1 for size violations
    long long measured;
    long long bound;
};

struct BoundsCheck {
    bool ok = true;
    std::optional<BoundsViolation> violation;
};

// (n1, n2; D1, D2) boundedness: part sizes and per-vertex degree caps.
inline BoundsCheck is_bounded_bipartite(const BipartiteGraph& g, int n1, int n2, int d1, int d2) {
    BoundsCheck r;
    auto fail = [&](BoundsViolation v) {
        r.ok = false;
        r.violation = v;
        return r;
    };
    if (g.size(Part::one) > n1) return fail({BoundsViolation::Kind::part_size, Part::one, -1, g.size(Part::one), n1});
    if (g.size(Part::two) > n2) return fail({BoundsViolation::Kind::part_size, Part::two, -1, g.size(Part::two), n2});
    for (int i = 0; i < g.size(Part::one); ++i)
        if (g.degree(Part::one, i) > d1) return fail({BoundsViolation::Kind::degree, Part::one, i, g.degree(Part::one, i), d1});
    for (int j = 0; j < g.size(Part::two); ++j)
        if (g.degree(Part::two, j) > d2) return fail({BoundsViolation::Kind::degree, Part::two, j, g.degree(Part::two, j), d2});
    return r;
}

struct ExpansionCheck {
    bool ok = true;
    std::optional<VertexSet> witness;  // minimum-size, lexicographically least violating X
};

namespace detail {

// Depth-first scan over size-k index combinations of one part, ascending
// lexicographic, maintaining the running neighborhood union. `visit` is called
// on complete combinations; returning true stops the scan. `prune` may cut a
// subtree when no completion of the current prefix can matter.
template <typename Visit, typename Prune>
bool combination_scan(const BipartiteGraph& g, Part part, int k, std::uint64_t& nodes, std::uint64_t budget,
                      Visit&& visit, Prune&& prune) {
    const int m = g.size(part);
    if (k > m) return false;
    std::vector<int> chosen;
    chosen.reserve(k);
    std::vector<Bitset> stack;  // neighborhood union per depth
    stack.reserve(k + 1);
    stack.emplace_back(g.size(other(part)));

    auto rec = [&](auto&& self, int from) -> bool {
        const int depth = static_cast<int>(chosen.size());
        if (depth == k) return visit(chosen, stack.back());
        for (int v = from; v <= m - (k - depth); ++v) {
            if (++nodes > budget) throw EnumerationBudgetExceededError(budget);
            Bitset next = stack.back() | g.row(part, v);
            chosen.push_back(v);
            stack.push_back(std::move(next));
            bool stop = false;
            if (!prune(chosen, stack.back())) stop = self(self, v + 1);
            stack.pop_back();
            chosen.pop_back();
            if (stop) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

}  // namespace detail

// (n, D)-expanding: every nonempty X within one part with |X| <= n has
// |N(X)| >= D|X|. D may be rational; the comparison is exact. On failure the
// witness is the smallest violating set, lexicographically least among those.
inline ExpansionCheck is_expanding(const BipartiteGraph& g, int n, Ratio D, EnumerationBudget budget = {}) {
    ExpansionCheck result;
    std::uint64_t nodes = 0;
    for (int k = 1; k <= n; ++k) {
        for (Part part : {Part::one, Part::two}) {
            if (k > g.size(part)) continue;
            bool found = detail::combination_scan(
                g, part, k, nodes, budget.max_nodes,
                [&](const std::vector<int>& chosen, const Bitset& nb) {
                    if (!count_at_least(nb.count(), D, k)) {
                        result.ok = false;
                        result.witness = VertexSet(part, g.size(part), chosen);
                        return true;
                    }
                    return false;
                },
                [&](const std::vector<int>&, const Bitset& nb) {
                    // |N| only grows along the branch; once >= D*k nothing below violates
                    return count_at_least(nb.count(), D, k);
                });
            if (found) return result;
        }
    }
    return result;
}

// Induced subgraph on kept index sets, with new->old index maps per part.
struct InducedSubgraph {
    BipartiteGraph graph;
    std::vector<int> to_old1, to_old2;
    std::vector<int> to_new1, to_new2;  // -1 for dropped vertices
};

inline InducedSubgraph induced_subgraph(const BipartiteGraph& g, const Bitset& keep1, const Bitset& keep2) {
    InducedSubgraph out;
    out.to_old1 = keep1.to_indices();
    out.to_old2 = keep2.to_indices();
    out.to_new1.assign(g.size(Part::one), -1);
    out.to_new2.assign(g.size(Part::two), -1);
    for (size_t i = 0; i < out.to_old1.size(); ++i) out.to_new1[out.to_old1[i]] = static_cast<int>(i);
    for (size_t j = 0; j < out.to_old2.size(); ++j) out.to_new2[out.to_old2[j]] = static_cast<int>(j);
    BipartiteGraph::Builder b(static_cast<int>(out.to_old1.size()), static_cast<int>(out.to_old2.size()));
    for (size_t i = 0; i < out.to_old1.size(); ++i) {
        Bitset r = g.row(Part::one, out.to_old1[i]);
        r &= keep2;
        r.for_each([&](int j) { b.add_edge(static_cast<int>(i), out.to_new2[j]); });
    }
    out.graph = std::move(b).build();
    return out;
}

}  // namespace srlab
