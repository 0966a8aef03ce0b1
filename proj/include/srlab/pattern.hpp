#pragma once

#include <algorithm>
#include <vector>

#include "srlab/core.hpp"

namespace srlab {

struct DegreeTooHighError : Error { using Error::Error; };

// Mutable bipartite pattern with tombstoned removal: indices are never reused,
// so (part, index) names stay stable across add/prune cycles.
class PatternGraph {
  public:
    PatternGraph() = default;
    PatternGraph(int initial1, int initial2) {
        for (int i = 0; i < initial1; ++i) add_vertex(Part::one);
        for (int i = 0; i < initial2; ++i) add_vertex(Part::two);
    }

    VertexRef add_vertex(Part p) {
        auto& s = side(p);
        s.adj.emplace_back();
        s.alive.push_back(true);
        ++s.alive_count;
        return {p, static_cast<int>(s.adj.size()) - 1};
    }

    void add_edge(VertexRef u, VertexRef v) {
        if (u.part == v.part) throw SamePartError("pattern edge inside part " + std::to_string(part_label(u.part)));
        check_alive(u);
        check_alive(v);
        auto& nu = side(u.part).adj[u.index];
        if (std::find(nu.begin(), nu.end(), v.index) != nu.end())
            throw DuplicateEdgeError("pattern edge already present");
        nu.push_back(v.index);
        side(v.part).adj[v.index].push_back(u.index);
    }

    VertexRef add_leaf(VertexRef parent) {
        check_alive(parent);
        VertexRef leaf = add_vertex(other(parent.part));
        add_edge(parent, leaf);
        return leaf;
    }

    void remove_vertex(VertexRef v) {
        check_alive(v);
        auto& s = side(v.part);
        if (s.adj[v.index].size() > 1)
            throw DegreeTooHighError("vertex (" + std::to_string(part_label(v.part)) + "," + std::to_string(v.index) +
                                     ") has degree " + std::to_string(s.adj[v.index].size()));
        for (int w : s.adj[v.index]) {
            auto& back = side(other(v.part)).adj[w];
            back.erase(std::find(back.begin(), back.end(), v.index));
        }
        s.adj[v.index].clear();
        s.alive[v.index] = false;
        --s.alive_count;
    }

    bool alive(VertexRef v) const {
        const auto& s = side(v.part);
        return v.index >= 0 && v.index < static_cast<int>(s.alive.size()) && s.alive[v.index];
    }

    int degree(VertexRef v) const {
        check_alive(v);
        return static_cast<int>(side(v.part).adj[v.index].size());
    }

    // neighbor indices in the opposite part
    const std::vector<int>& neighbors(VertexRef v) const {
        check_alive(v);
        return side(v.part).adj[v.index];
    }

    int slots(Part p) const { return static_cast<int>(side(p).adj.size()); }
    int alive_count(Part p) const { return side(p).alive_count; }

    int max_degree() const {
        int d = 0;
        for (Part p : {Part::one, Part::two}) {
            const auto& s = side(p);
            for (size_t i = 0; i < s.adj.size(); ++i)
                if (s.alive[i]) d = std::max(d, static_cast<int>(s.adj[i].size()));
        }
        return d;
    }

    // (n1, n2; d1, d2) boundedness over live vertices
    bool within_bounds(int n1, int n2, int d1, int d2) const {
        if (alive_count(Part::one) > n1 || alive_count(Part::two) > n2) return false;
        for (Part p : {Part::one, Part::two}) {
            const auto& s = side(p);
            int cap = p == Part::one ? d1 : d2;
            for (size_t i = 0; i < s.adj.size(); ++i)
                if (s.alive[i] && static_cast<int>(s.adj[i].size()) > cap) return false;
        }
        return true;
    }

    template <typename F>
    void for_each_alive(Part p, F&& f) const {
        const auto& s = side(p);
        for (size_t i = 0; i < s.adj.size(); ++i)
            if (s.alive[i]) f(VertexRef{p, static_cast<int>(i)});
    }

  private:
    struct Side {
        std::vector<std::vector<int>> adj;
        std::vector<bool> alive;
        int alive_count = 0;
    };

    Side& side(Part p) { return p == Part::one ? s1_ : s2_; }
    const Side& side(Part p) const { return p == Part::one ? s1_ : s2_; }

    void check_alive(VertexRef v) const {
        if (!alive(v))
            throw InvalidVertexError("pattern vertex (" + std::to_string(part_label(v.part)) + "," +
                                     std::to_string(v.index) + ") not present");
    }

    Side s1_, s2_;
};

}  // namespace srlab
