#pragma once

#include <memory>
#include <sstream>

#include "srlab/bigraph.hpp"
#include "srlab/pattern.hpp"

namespace srlab {

// Partial injective embedding of a pattern into a host, part 1 to part 1,
// part 2 to part 2. Every mutation preserves injectivity and edge preservation
// (pattern edges between mapped vertices map onto host edges). Value type:
// copies are independent snapshots.
class Embedding {
  public:
    Embedding(std::shared_ptr<const BipartiteGraph> host, PatternGraph pattern)
        : host_(std::move(host)), pattern_(std::move(pattern)) {
        for (Part p : {Part::one, Part::two}) {
            fwd(p).assign(pattern_.slots(p), -1);
            inv(p).assign(host_->size(p), -1);
            image_[part_index(p)] = Bitset(host_->size(p));
            hostdeg(p).assign(host_->size(p), 0);
        }
    }

    const BipartiteGraph& host() const { return *host_; }
    std::shared_ptr<const BipartiteGraph> host_ptr() const { return host_; }
    const PatternGraph& pattern() const { return pattern_; }

    bool mapped(VertexRef pv) const {
        return pv.index < static_cast<int>(fwd(pv.part).size()) && fwd(pv.part)[pv.index] >= 0;
    }
    int image_of(VertexRef pv) const {
        if (!mapped(pv)) throw InvalidVertexError("pattern vertex not mapped");
        return fwd(pv.part)[pv.index];
    }
    // -1 when the host vertex is unused
    int preimage_of(Part p, int host_index) const { return inv(p)[host_index]; }

    const Bitset& image(Part p) const { return image_[part_index(p)]; }
    int image_count(Part p) const { return image_[part_index(p)].count(); }
    int pattern_degree_at(Part p, int host_index) const { return hostdeg(p)[host_index]; }

    void map_vertex(VertexRef pv, int host_index) {
        if (!pattern_.alive(pv)) throw InvalidVertexError("pattern vertex not present");
        if (mapped(pv)) throw InvalidVertexError("pattern vertex already mapped");
        if (host_index < 0 || host_index >= host_->size(pv.part)) throw InvalidVertexError("host index out of range");
        if (inv(pv.part)[host_index] >= 0) throw InvalidVertexError("host vertex already used");
        // edge preservation against already-mapped pattern neighbors
        for (int nb : pattern_.neighbors(pv)) {
            VertexRef pn{other(pv.part), nb};
            if (!mapped(pn)) continue;
            int hn = fwd(pn.part)[pn.index];
            bool ok = pv.part == Part::one ? host_->has_edge(host_index, hn) : host_->has_edge(hn, host_index);
            if (!ok) throw InvalidVertexError("mapping would break edge preservation");
        }
        fwd(pv.part)[pv.index] = host_index;
        inv(pv.part)[host_index] = pv.index;
        image_[part_index(pv.part)].set(host_index);
        // deficiency counts the full pattern degree of the preimage
        hostdeg(pv.part)[host_index] = pattern_.degree(pv);
    }

    // adds a pattern leaf under `parent` and maps it onto host vertex `host_index`
    VertexRef extend(VertexRef parent, int host_index) {
        if (!mapped(parent)) throw InvalidVertexError("extend: parent must be mapped");
        VertexRef leaf = pattern_.add_leaf(parent);
        fwd(leaf.part).push_back(-1);  // slot stays tombstoned if mapping fails
        ++hostdeg(parent.part)[image_of(parent)];
        try {
            map_vertex(leaf, host_index);
        } catch (...) {
            remove_vertex(leaf);
            throw;
        }
        return leaf;
    }

    // pattern edge between two mapped vertices; the host edge must exist
    void add_pattern_edge(VertexRef u, VertexRef v) {
        if (!mapped(u) || !mapped(v)) throw InvalidVertexError("add_pattern_edge: endpoints must be mapped");
        int hu = image_of(u), hv = image_of(v);
        if (u.part == v.part) throw SamePartError("pattern edge inside one part");
        int h1 = u.part == Part::one ? hu : hv;
        int h2 = u.part == Part::one ? hv : hu;
        if (!host_->has_edge(h1, h2)) throw InvalidVertexError("host edge missing for pattern edge");
        pattern_.add_edge(u, v);
        ++hostdeg(u.part)[hu];
        ++hostdeg(v.part)[hv];
    }

    // removes a present pattern vertex of degree <= 1 and frees its host vertex
    void remove_vertex(VertexRef pv) {
        if (!pattern_.alive(pv)) throw InvalidVertexError("remove_vertex: not present");
        std::vector<int> nbs = pattern_.neighbors(pv);
        pattern_.remove_vertex(pv);  // throws DegreeTooHigh when degree > 1
        if (mapped(pv)) {
            int h = fwd(pv.part)[pv.index];
            fwd(pv.part)[pv.index] = -1;
            inv(pv.part)[h] = -1;
            image_[part_index(pv.part)].reset(h);
            hostdeg(pv.part)[h] = 0;
        }
        for (int nb : nbs) {
            VertexRef pn{other(pv.part), nb};
            if (mapped(pn)) --hostdeg(pn.part)[fwd(pn.part)[pn.index]];
        }
    }

    // |N_host(X) \ image|, X within one host part
    int fresh_neighbor_count(const VertexSet& X) const {
        Bitset acc(host_->size(other(X.part)));
        X.bits.for_each([&](int i) { acc |= host_->row(X.part, i); });
        return acc.count_andnot(image(other(X.part)));
    }

    int mapped_count(Part p) const {
        int c = 0;
        pattern_.for_each_alive(p, [&](VertexRef v) {
            if (mapped(v)) ++c;
        });
        return c;
    }

    std::string to_tsv() const {
        std::ostringstream out;
        for (Part p : {Part::one, Part::two})
            pattern_.for_each_alive(p, [&](VertexRef v) {
                if (mapped(v))
                    out << part_label(p) << "\t" << v.index << "\t" << part_label(p) << "\t" << fwd(p)[v.index]
                        << "\n";
            });
        return out.str();
    }

  private:
    std::vector<int>& fwd(Part p) { return fwd_[part_index(p)]; }
    const std::vector<int>& fwd(Part p) const { return fwd_[part_index(p)]; }
    std::vector<int>& inv(Part p) { return inv_[part_index(p)]; }
    const std::vector<int>& inv(Part p) const { return inv_[part_index(p)]; }
    std::vector<int>& hostdeg(Part p) { return hostdeg_[part_index(p)]; }
    const std::vector<int>& hostdeg(Part p) const { return hostdeg_[part_index(p)]; }

    std::shared_ptr<const BipartiteGraph> host_;
    PatternGraph pattern_;
    std::vector<int> fwd_[2], inv_[2];
    Bitset image_[2];
    std::vector<int> hostdeg_[2];
};

}  // namespace srlab
