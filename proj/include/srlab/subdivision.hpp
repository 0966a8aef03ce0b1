#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "srlab/joinedness.hpp"

namespace srlab {

struct NonBipartiteError : Error { using Error::Error; };
struct HypothesisViolationError : Error { using Error::Error; };

struct NoCrossingEdgeError : Error {
    int edge_index;
    std::vector<int> side_one, side_two;  // leaf images per host part, ascending

    NoCrossingEdgeError(int e, std::vector<int> s1, std::vector<int> s2)
        : Error("no host edge between the leaf images grown for edge " + std::to_string(e)),
          edge_index(e),
          side_one(std::move(s1)),
          side_two(std::move(s2)) {}
};

// simple undirected graph, the shape whose subdivision gets embedded
struct BaseGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // normalized u < v

    static BaseGraph from_edges(int n, const std::vector<std::pair<int, int>>& raw) {
        BaseGraph g;
        g.n = n;
        std::set<std::pair<int, int>> seen;
        for (auto [u, v] : raw) {
            if (u < 0 || u >= n || v < 0 || v >= n) throw InvalidVertexError("base graph edge endpoint out of range");
            if (u == v) throw InvalidVertexError("base graph must be loop free");
            auto e = std::minmax(u, v);
            if (!seen.insert({e.first, e.second}).second) throw DuplicateEdgeError("duplicate base graph edge");
            g.edges.emplace_back(e.first, e.second);
        }
        return g;
    }

    static BaseGraph single_edge() { return from_edges(2, {{0, 1}}); }
    static BaseGraph path(int len) {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < len; ++i) e.emplace_back(i, i + 1);
        return from_edges(len + 1, e);
    }
    static BaseGraph star(int leaves) {
        std::vector<std::pair<int, int>> e;
        for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
        return from_edges(leaves + 1, e);
    }
    static BaseGraph cycle(int len) {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < len; ++i) e.emplace_back(i, (i + 1) % len);
        return from_edges(len, e);
    }
    static BaseGraph complete(int n) {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
        return from_edges(n, e);
    }

    int max_degree() const {
        std::vector<int> deg(n, 0);
        for (auto [u, v] : edges) {
            ++deg[u];
            ++deg[v];
        }
        int best = 0;
        for (int d : deg) best = std::max(best, d);
        return best;
    }
};

// every edge e of the base replaced by a path with sigma[e] edges
struct SubdivisionSpec {
    BaseGraph base;
    std::vector<int> sigma;

    static SubdivisionSpec uniform(BaseGraph b, int sigma) {
        SubdivisionSpec s;
        s.sigma.assign(b.edges.size(), sigma);
        s.base = std::move(b);
        return s;
    }
};

struct SubdividedGraph {
    int base_n = 0;
    std::vector<std::pair<int, int>> base_edges;
    std::vector<int> sigma;
    int total = 0;
    std::vector<std::vector<int>> path_vertices;  // per edge, interior vertices ordered from the smaller endpoint
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;
    std::vector<int> color;  // two coloring, least vertex of each component gets 0
};

// Builds the subdivided graph and two colors it. The result is bipartite
// exactly when every base cycle has even total subdivided length.
inline SubdividedGraph build_subdivision(const SubdivisionSpec& spec) {
    if (spec.sigma.size() != spec.base.edges.size())
        throw std::invalid_argument("build_subdivision: one sigma per base edge required");
    for (int s : spec.sigma)
        if (s < 1) throw std::invalid_argument("build_subdivision: sigma must be at least 1");

    SubdividedGraph g;
    g.base_n = spec.base.n;
    g.base_edges = spec.base.edges;
    g.sigma = spec.sigma;
    g.total = spec.base.n;
    for (size_t e = 0; e < spec.base.edges.size(); ++e) {
        auto [u, v] = spec.base.edges[e];
        std::vector<int> path;
        int prev = u;
        for (int i = 1; i < spec.sigma[e]; ++i) {
            int w = g.total++;
            path.push_back(w);
            g.edges.emplace_back(prev, w);
            prev = w;
        }
        g.edges.emplace_back(prev, v);
        g.path_vertices.push_back(std::move(path));
    }

    g.adj.assign(g.total, {});
    for (auto [a, b] : g.edges) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    }

    g.color.assign(g.total, -1);
    for (int start = 0; start < g.total; ++start) {
        if (g.color[start] != -1) continue;
        g.color[start] = 0;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            int a = queue.front();
            queue.pop_front();
            for (int b : g.adj[a]) {
                if (g.color[b] == -1) {
                    g.color[b] = 1 - g.color[a];
                    queue.push_back(b);
                } else if (g.color[b] == g.color[a]) {
                    throw NonBipartiteError("subdivision contains an odd cycle");
                }
            }
        }
    }
    return g;
}

struct HypothesisReport {
    bool pass = true;
    bool alpha_small_enough = true;  // alpha <= 1 / (6D + 14)
    bool degree_enough = true;       // D >= 3 and D >= max base degree
    bool host_large_enough = true;   // alpha N >= total subdivision vertices
    bool reservoir_fits = true;      // 2 ceil(alpha N) <= N
    bool bipartite = true;
    std::vector<int> short_edges;    // sigma below 2k+1 (odd) or 2k+2 (even)
    long long s = 0;
    int k = 0;
    long long total_vertices = 0;
    int max_base_degree = 0;
    std::vector<std::string> violations;
};

inline HypothesisReport check_hypotheses(const SubdivisionSpec& spec, int N, Ratio alpha, int D) {
    if (alpha.num <= 0) throw std::invalid_argument("check_hypotheses: alpha must be positive");
    HypothesisReport rep;
    rep.max_base_degree = spec.base.max_degree();
    rep.total_vertices = spec.base.n;
    for (int s : spec.sigma) rep.total_vertices += s - 1;
    rep.s = ceil_mul(alpha, N);

    if (alpha.num * (6LL * D + 14) > alpha.den) {
        rep.alpha_small_enough = false;
        rep.violations.push_back("alpha exceeds 1/(6D+14) = 1/" + std::to_string(6 * D + 14));
    }
    if (D < 3 || D < rep.max_base_degree) {
        rep.degree_enough = false;
        rep.violations.push_back("degree budget " + std::to_string(D) + " is below max(3, base max degree " +
                                 std::to_string(rep.max_base_degree) + ")");
    }
    if (alpha.num * N < rep.total_vertices * alpha.den) {
        rep.host_large_enough = false;
        rep.violations.push_back("host size " + std::to_string(N) + " is below " +
                                 std::to_string(rep.total_vertices) + "/alpha");
    }
    if (2 * rep.s > N) {
        rep.reservoir_fits = false;
        rep.violations.push_back("reservoir 2*ceil(alpha N) does not fit in a part");
    }

    if (D >= 3) {
        rep.k = branch_height_for(D, static_cast<int>(std::min<long long>(rep.s, 1 << 30)));
        for (size_t e = 0; e < spec.sigma.size(); ++e) {
            int need = spec.sigma[e] % 2 == 1 ? 2 * rep.k + 1 : 2 * rep.k + 2;
            if (spec.sigma[e] < need) {
                rep.short_edges.push_back(static_cast<int>(e));
                rep.violations.push_back("edge " + std::to_string(e) + " has sigma " +
                                         std::to_string(spec.sigma[e]) + " below the minimum " +
                                         std::to_string(need));
            }
        }
    }

    // parity two coloring of the base: color(v) = color(u) xor sigma(uv) mod 2
    std::vector<std::vector<std::pair<int, int>>> badj(spec.base.n);
    for (size_t e = 0; e < spec.base.edges.size(); ++e) {
        auto [u, v] = spec.base.edges[e];
        badj[u].emplace_back(v, spec.sigma[e] % 2);
        badj[v].emplace_back(u, spec.sigma[e] % 2);
    }
    std::vector<int> col(spec.base.n, -1);
    for (int start = 0; start < spec.base.n && rep.bipartite; ++start) {
        if (col[start] != -1) continue;
        col[start] = 0;
        std::deque<int> queue{start};
        while (!queue.empty() && rep.bipartite) {
            int a = queue.front();
            queue.pop_front();
            for (auto [b, par] : badj[a]) {
                int want = col[a] ^ par;
                if (col[b] == -1) {
                    col[b] = want;
                    queue.push_back(b);
                } else if (col[b] != want) {
                    rep.bipartite = false;
                    rep.violations.push_back("subdivision has an odd cycle");
                }
            }
        }
    }

    rep.pass = rep.alpha_small_enough && rep.degree_enough && rep.host_large_enough && rep.reservoir_fits &&
               rep.bipartite && rep.short_edges.empty();
    return rep;
}

struct EmbedOptions {
    bool certified = false;  // exhaustive goodness per growth step instead of the capped check
    int greedy_cap = 2;
    bool enforce_hypotheses = true;
    bool mirror = false;     // swap which color class lands in host part one
    std::optional<std::uint64_t> y_seed;
    EnumerationBudget budget{};
};

struct EmbedStats {
    long long extends = 0;
    long long candidates_tried = 0;
    long long pruned_vertices = 0;
    long long removed_by_extraction = 0;
    std::vector<long long> per_edge_tried;   // growth candidates per base edge
    std::vector<long long> per_edge_pruned;  // vertices dropped per base edge
};

struct SubdivisionEmbedding {
    SubdividedGraph shape;
    ExtractionResult extraction;
    std::array<Part, 2> part_of_color{Part::one, Part::two};
    std::vector<int> host_of;           // shape vertex -> kept host index
    std::vector<int> host_of_original;  // shape vertex -> input host index
    Embedding embedding;                // pattern indexed like shape, over the kept host
    EmbedStats stats;
};

// Full pipeline: extract an expanding subgraph, park the branch vertices on
// the surviving reservoirs, grow a path plus tree shape from both ends of
// every subdivided edge, join the two shapes through a host edge between
// their leaf images, prune everything off the chosen path, and finally remap
// the finished picture onto a pattern indexed like the subdivision itself.
inline SubdivisionEmbedding embed_subdivision(const BipartiteGraph& host, const SubdivisionSpec& spec,
                                              Ratio alpha, int D, EmbedOptions opts = {}) {
    const int N = host.size(Part::one);
    HypothesisReport hyp = check_hypotheses(spec, N, alpha, D);
    if (opts.enforce_hypotheses && !hyp.pass) {
        std::string msg = "embedding hypotheses violated:";
        for (const auto& v : hyp.violations) msg += " [" + v + "]";
        throw HypothesisViolationError(msg);
    }

    SubdividedGraph shape = build_subdivision(spec);
    ExtractionResult ext = extract_expander(host, alpha, opts.y_seed, opts.budget);
    const long long s = ext.s;
    const int n_grow = static_cast<int>(3 * s);
    const Ratio degree(D);
    const ExtendMode mode = opts.certified ? ExtendMode::Certified() : ExtendMode::Greedy(opts.greedy_cap);

    std::array<Part, 2> cls{opts.mirror ? Part::two : Part::one, opts.mirror ? Part::one : Part::two};
    int r1 = 0, r2 = 0;
    for (int v = 0; v < shape.base_n; ++v) (cls[shape.color[v]] == Part::one ? r1 : r2)++;

    EmbedStats stats;
    Embedding emb = initial_null_embedding(ext, r1, r2);
    stats.removed_by_extraction = static_cast<long long>(ext.removed1.size() + ext.removed2.size());

    std::vector<VertexRef> base_ref(shape.base_n, VertexRef{Part::one, -1});
    {
        int c1 = 0, c2 = 0;
        for (int v = 0; v < shape.base_n; ++v) {
            Part p = cls[shape.color[v]];
            base_ref[v] = VertexRef{p, p == Part::one ? c1++ : c2++};
        }
    }
    std::vector<int> host_of(shape.total, -1);
    for (int v = 0; v < shape.base_n; ++v) host_of[v] = emb.image_of(base_ref[v]);

    const BipartiteGraph& kept = *ext.kept;

    for (size_t e = 0; e < shape.base_edges.size(); ++e) {
        auto [u, v] = shape.base_edges[e];
        const int sig = shape.sigma[e];
        const long long tried_before = stats.candidates_tried;

        // The role with the shorter stem can branch right at the root, costing
        // the root up to D - 1 degree at once; hand it to the endpoint with
        // more remaining budget. Ties keep the lower endpoint for determinism.
        bool u_short = emb.pattern().degree(base_ref[u]) <= emb.pattern().degree(base_ref[v]);
        TreeBlueprint bu = build_tree_blueprint(
            sig, sig % 2 ? ParityRole::odd : (u_short ? ParityRole::even_j1 : ParityRole::even_j2), D,
            static_cast<int>(s));
        TreeBlueprint bv = build_tree_blueprint(
            sig, sig % 2 ? ParityRole::odd : (u_short ? ParityRole::even_j2 : ParityRole::even_j1), D,
            static_cast<int>(s));

        auto grow = [&](const TreeBlueprint& bp, VertexRef root) {
            std::vector<VertexRef> ref(bp.size(), root);
            for (int i = 1; i < bp.size(); ++i) {
                VertexRef parent = ref[bp.parent[i]];
                int tried = 0;
                emb = extend_leaf(emb, parent, n_grow, degree, mode, &tried, opts.budget);
                Part leaf_part = other(parent.part);
                ref[i] = VertexRef{leaf_part, emb.pattern().slots(leaf_part) - 1};
                ++stats.extends;
                stats.candidates_tried += tried;
            }
            return ref;
        };
        std::vector<VertexRef> ru = grow(bu, base_ref[u]);
        std::vector<VertexRef> rv = grow(bv, base_ref[v]);

        if (!emb.pattern().within_bounds(n_grow, n_grow, D, D))
            throw Error("pattern outgrew its certified bounds while processing edge " + std::to_string(e));

        // the two leaf layers must land in opposite host parts
        Part pu = bu.leaves.empty() ? base_ref[u].part : ru[bu.leaves[0]].part;
        Part pv = bv.leaves.empty() ? base_ref[v].part : rv[bv.leaves[0]].part;
        if (pu == pv) throw Error("leaf layers landed in the same part; subdivision parity is inconsistent");

        std::map<int, int> img_u, img_v;  // host index -> blueprint leaf node
        for (int leaf : bu.leaves) img_u[emb.image_of(ru[leaf])] = leaf;
        for (int leaf : bv.leaves) img_v[emb.image_of(rv[leaf])] = leaf;
        const auto& img_one = pu == Part::one ? img_u : img_v;
        const auto& img_two = pu == Part::one ? img_v : img_u;

        int pick_one = -1, pick_two = -1;
        for (const auto& [a, la] : img_one) {
            for (const auto& [b, lb] : img_two) {
                if (kept.has_edge(a, b)) {
                    pick_one = a;
                    pick_two = b;
                    break;
                }
            }
            if (pick_one >= 0) break;
        }
        if (pick_one < 0) {
            std::vector<int> s1, s2;
            for (const auto& [a, _] : img_one) s1.push_back(a);
            for (const auto& [b, _] : img_two) s2.push_back(b);
            throw NoCrossingEdgeError(static_cast<int>(e), std::move(s1), std::move(s2));
        }

        int leaf_u = pu == Part::one ? img_one.at(pick_one) : img_two.at(pick_two);
        int leaf_v = pu == Part::one ? img_two.at(pick_two) : img_one.at(pick_one);
        emb.add_pattern_edge(ru[leaf_u], rv[leaf_v]);

        // chosen root to leaf paths
        auto path_nodes = [](const TreeBlueprint& bp, int leaf) {
            std::vector<int> nodes;  // indexed by depth, nodes[0] = 0
            for (int cur = leaf; cur != -1; cur = bp.parent[cur]) nodes.push_back(cur);
            std::reverse(nodes.begin(), nodes.end());
            return nodes;
        };
        std::vector<int> keep_u = path_nodes(bu, leaf_u);
        std::vector<int> keep_v = path_nodes(bv, leaf_v);

        for (int d = 1; d <= bu.root_to_leaf(); ++d) host_of[shape.path_vertices[e][d - 1]] = emb.image_of(ru[keep_u[d]]);
        for (int d = 1; d <= bv.root_to_leaf(); ++d) host_of[shape.path_vertices[e][sig - 1 - d]] = emb.image_of(rv[keep_v[d]]);

        // drop everything outside the chosen paths, children before parents
        std::vector<std::pair<int, VertexRef>> drop;
        auto mark = [&](const TreeBlueprint& bp, const std::vector<VertexRef>& ref, const std::vector<int>& keep) {
            std::vector<char> kept_node(bp.size(), 0);
            for (int nodeidx : keep) kept_node[nodeidx] = 1;
            for (int i = 1; i < bp.size(); ++i)
                if (!kept_node[i]) drop.emplace_back(bp.depth[i], ref[i]);
        };
        mark(bu, ru, keep_u);
        mark(bv, rv, keep_v);
        std::sort(drop.begin(), drop.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            if (a.second.part != b.second.part) return a.second.part < b.second.part;
            return a.second.index < b.second.index;
        });
        for (const auto& [_, refv] : drop) emb.remove_vertex(refv);
        stats.pruned_vertices += static_cast<long long>(drop.size());
        stats.per_edge_tried.push_back(stats.candidates_tried - tried_before);
        stats.per_edge_pruned.push_back(static_cast<long long>(drop.size()));
    }

    if (emb.pattern().alive_count(Part::one) + emb.pattern().alive_count(Part::two) != shape.total)
        throw Error("finished pattern size does not match the subdivision");

    // re-express over a pattern indexed like the subdivision, revalidating
    // adjacency and injectivity vertex by vertex
    PatternGraph hp;
    std::vector<VertexRef> href;
    href.reserve(shape.total);
    for (int i = 0; i < shape.total; ++i) href.push_back(hp.add_vertex(cls[shape.color[i]]));
    for (auto [a, b] : shape.edges) hp.add_edge(href[a], href[b]);
    Embedding remapped(ext.kept, std::move(hp));
    for (int i = 0; i < shape.total; ++i) remapped.map_vertex(href[i], host_of[i]);

    std::vector<int> host_of_original(shape.total, -1);
    for (int i = 0; i < shape.total; ++i) {
        Part p = cls[shape.color[i]];
        host_of_original[i] = p == Part::one ? ext.to_old1[host_of[i]] : ext.to_old2[host_of[i]];
    }

    return SubdivisionEmbedding{std::move(shape), std::move(ext),     cls,  std::move(host_of),
                                std::move(host_of_original), std::move(remapped), stats};
}

struct AuditReport {
    bool ok = false;
    long long image_vertices = 0;       // distinct host vertices used
    std::vector<int> path_edge_counts;  // verified host edges along each subdivided edge
};

// Recomputes the promises of a finished embedding from host_of and the kept
// graph alone: images are pairwise distinct, each subdivided edge is walked
// along exactly sigma(e) host edges, and the part assignment follows the
// 2-coloring. Deliberately ignores the Embedding object.
inline AuditReport audit_subdivision(const SubdivisionEmbedding& out) {
    AuditReport rep;
    const SubdividedGraph& shape = out.shape;
    const BipartiteGraph& kept = *out.extraction.kept;
    bool ok = shape.total > 0;

    std::set<std::pair<int, int>> images;
    for (int v = 0; v < shape.total; ++v) {
        Part p = out.part_of_color[shape.color[v]];
        int h = out.host_of[v];
        if (h < 0 || h >= kept.size(p)) {
            ok = false;
            continue;
        }
        if (!images.insert({part_index(p), h}).second) ok = false;
    }
    rep.image_vertices = static_cast<long long>(images.size());

    for (size_t e = 0; e < shape.base_edges.size(); ++e) {
        auto [u, v] = shape.base_edges[e];
        std::vector<int> walk{u};
        walk.insert(walk.end(), shape.path_vertices[e].begin(), shape.path_vertices[e].end());
        walk.push_back(v);
        int edges = 0;
        for (size_t i = 0; i + 1 < walk.size(); ++i) {
            int a = walk[i], b = walk[i + 1];
            if (shape.color[a] == shape.color[b]) {
                ok = false;
                break;
            }
            Part pa = out.part_of_color[shape.color[a]];
            int ha = out.host_of[a], hb = out.host_of[b];
            bool present = pa == Part::one ? kept.has_edge(ha, hb) : kept.has_edge(hb, ha);
            if (!present) {
                ok = false;
                break;
            }
            ++edges;
        }
        rep.path_edge_counts.push_back(edges);
        if (edges != shape.sigma[e]) ok = false;
    }

    if (rep.image_vertices != shape.total) ok = false;
    rep.ok = ok;
    return rep;
}

}  // namespace srlab
