#pragma once

// Reference computations done the slow, obvious way: std::set and loops, no
// bitsets, no pruning. The test suites compare the library against these.

#include <optional>
#include <set>
#include <vector>

#include "srlab/embedding.hpp"

namespace srlab::oracle {

// value num/den, den = D.den (not normalized)
struct Frac {
    long long num = 0;
    long long den = 1;

    bool negative() const { return num < 0; }
    friend bool operator==(const Frac& a, const Frac& b) {
        return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
    }
};

inline bool same_value(const Frac& a, const Ratio& b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

inline std::set<int> image_set(const Embedding& emb, Part p) {
    std::set<int> out;
    emb.pattern().for_each_alive(p, [&](VertexRef v) {
        if (emb.mapped(v)) out.insert(emb.image_of(v));
    });
    return out;
}

inline bool host_adjacent(const BipartiteGraph& g, Part xpart, int x, int y) {
    return xpart == Part::one ? g.has_edge(x, y) : g.has_edge(y, x);
}

inline Frac deficiency_frac(const Embedding& emb, Part part, const std::vector<int>& X, Ratio D) {
    const auto& g = emb.host();
    const Part op = other(part);
    std::set<int> img_same = image_set(emb, part);
    std::set<int> img_other = image_set(emb, op);

    long long fresh = 0;
    for (int b = 0; b < g.size(op); ++b) {
        if (img_other.count(b)) continue;
        bool hit = false;
        for (int x : X)
            if (host_adjacent(g, part, x, b)) { hit = true; break; }
        if (hit) ++fresh;
    }

    long long degsum = 0, occ = 0;
    for (int x : X) {
        if (!img_same.count(x)) continue;
        ++occ;
        emb.pattern().for_each_alive(part, [&](VertexRef v) {
            if (emb.mapped(v) && emb.image_of(v) == x) degsum += emb.pattern().degree(v);
        });
    }

    long long k = static_cast<long long>(X.size());
    return Frac{(fresh + degsum - occ) * D.den - D.num * k, D.den};
}

struct Violation {
    Part part;
    std::vector<int> X;
    Frac R;
};

// first violation in (size, part, lex) order, sizes 1..n
inline std::optional<Violation> first_violation(const Embedding& emb, int n, Ratio D) {
    const auto& g = emb.host();
    for (int k = 1; k <= n; ++k) {
        for (Part part : {Part::one, Part::two}) {
            const int m = g.size(part);
            if (k > m) continue;
            std::vector<int> X;
            auto rec = [&](auto&& self, int from) -> std::optional<Violation> {
                if (static_cast<int>(X.size()) == k) {
                    Frac R = deficiency_frac(emb, part, X, D);
                    if (R.negative()) return Violation{part, X, R};
                    return std::nullopt;
                }
                for (int v = from; v < m; ++v) {
                    X.push_back(v);
                    auto hit = self(self, v + 1);
                    X.pop_back();
                    if (hit) return hit;
                }
                return std::nullopt;
            };
            auto hit = rec(rec, 0);
            if (hit) return hit;
        }
    }
    return std::nullopt;
}

}  // namespace srlab::oracle
