#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "srlab/bigraph.hpp"
#include "srlab/bigraph_io.hpp"
#include "srlab/rng.hpp"

using namespace srlab;

namespace {

// oracle-side adjacency: plain sets, no bit tricks
struct AdjSets {
    std::vector<std::set<int>> a1, a2;
    explicit AdjSets(const BipartiteGraph& g) : a1(g.size(Part::one)), a2(g.size(Part::two)) {
        for (auto [i, j] : g.edges()) {
            a1[i].insert(j);
            a2[j].insert(i);
        }
    }
};

BipartiteGraph random_graph(Rng& rng, int n1, int n2, double p) {
    BipartiteGraph::Builder b(n1, n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            if (rng.unit() < p) b.add_edge(i, j);
    return std::move(b).build();
}

std::vector<int> random_subset(Rng& rng, int universe) {
    std::vector<int> out;
    for (int i = 0; i < universe; ++i)
        if (rng.unit() < 0.5) out.push_back(i);
    return out;
}

}  // namespace

TEST_CASE("builder rejects bad edges") {
    BipartiteGraph::Builder b(2, 3);
    b.add_edge(0, 0);
    CHECK_THROWS_AS(b.add_edge(0, 0), DuplicateEdgeError);
    CHECK_THROWS_AS(b.add_edge(2, 0), InvalidVertexError);
    CHECK_THROWS_AS(b.add_edge(0, 3), InvalidVertexError);
    CHECK_THROWS_AS(b.add_edge(VertexRef{Part::one, 0}, VertexRef{Part::one, 1}), SamePartError);
}

TEST_CASE("neighborhood of singleton and pair") {
    auto g = BipartiteGraph::from_edges(3, 3, {{0, 0}, {0, 1}, {1, 1}, {2, 2}});
    auto n0 = neighborhood(g, VertexSet(Part::one, 3, {0}));
    CHECK(n0.part == Part::two);
    CHECK(n0.indices() == std::vector<int>{0, 1});
    auto n01 = neighborhood(g, VertexSet(Part::one, 3, {0, 1}));
    CHECK(n01.indices() == std::vector<int>{0, 1});
    auto nall = neighborhood(g, VertexSet(Part::one, 3, {0, 1, 2}));
    CHECK(nall.indices() == std::vector<int>{0, 1, 2});
}

TEST_CASE("edge_count_between on K_{3,3} and a matching") {
    auto k33 = BipartiteGraph::complete(3, 3);
    CHECK(edge_count_between(k33, VertexSet(Part::one, 3, {0, 1}), VertexSet(Part::two, 3, {0, 1, 2})) == 6);
    auto m = BipartiteGraph::from_edges(4, 4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    CHECK(edge_count_between(m, VertexSet(Part::one, 4, {0, 1}), VertexSet(Part::two, 4, {1, 2})) == 1);
    CHECK_THROWS(edge_count_between(k33, VertexSet(Part::two, 3, {0}), VertexSet(Part::two, 3, {0})));
}

TEST_CASE("bounded bipartite check") {
    auto k33 = BipartiteGraph::complete(3, 3);
    CHECK(is_bounded_bipartite(k33, 3, 3, 3, 3).ok);
    auto r = is_bounded_bipartite(k33, 3, 3, 2, 3);
    REQUIRE_FALSE(r.ok);
    CHECK(r.violation->part == Part::one);
    CHECK(r.violation->index == 0);
    CHECK(r.violation->measured == 3);
    auto e = BipartiteGraph::empty(0, 0);
    CHECK(is_bounded_bipartite(e, 0, 0, 0, 0).ok);
}

TEST_CASE("expansion check basics") {
    auto k55 = BipartiteGraph::complete(5, 5);
    CHECK(is_expanding(k55, 1, Ratio(5)).ok);
    auto r = is_expanding(k55, 2, Ratio(3));
    REQUIRE_FALSE(r.ok);
    CHECK(r.witness->part == Part::one);
    CHECK(r.witness->indices() == std::vector<int>{0, 1});

    auto m = BipartiteGraph::from_edges(6, 6, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}});
    CHECK(is_expanding(m, 3, Ratio(1)).ok);
    CHECK_FALSE(is_expanding(m, 1, Ratio(2)).ok);

    // rational thresholds are exact: matching is (3, 1)-expanding but not (3, 4/3)-expanding
    CHECK_FALSE(is_expanding(m, 3, Ratio(4, 3)).ok);
}

TEST_CASE("expansion budget is enforced") {
    // perfect matching at D=1 never violates and never prunes, so the scan
    // must visit every combination
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 24; ++i) edges.emplace_back(i, i);
    auto g = BipartiteGraph::from_edges(24, 24, edges);
    EnumerationBudget tiny{100};
    CHECK_THROWS_AS(is_expanding(g, 12, Ratio(1), tiny), EnumerationBudgetExceededError);
}

TEST_CASE("witness is minimum-size lexicographically least") {
    // vertex 2 alone has degree 1 < 2; pairs {0,1} see 4 neighbors
    auto g = BipartiteGraph::from_edges(4, 4, {{0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 0}, {3, 0}, {3, 1}});
    auto r = is_expanding(g, 2, Ratio(2));
    REQUIRE_FALSE(r.ok);
    CHECK(r.witness->part == Part::one);
    CHECK(r.witness->indices() == std::vector<int>{2});
}

TEST_CASE("property: symmetry of adjacency") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = random_graph(rng, rng.range(1, 10), rng.range(1, 10), rng.unit());
        for (int i = 0; i < g.size(Part::one); ++i)
            for (int j = 0; j < g.size(Part::two); ++j)
                CHECK(g.row(Part::one, i).test(j) == g.row(Part::two, j).test(i));
    }
}

TEST_CASE("property: neighborhood union and counting identity") {
    Rng rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        int n1 = rng.range(1, 9), n2 = rng.range(1, 9);
        auto g = random_graph(rng, n1, n2, rng.unit());
        AdjSets adj(g);

        auto ai = random_subset(rng, n1);
        auto bi = random_subset(rng, n1);
        VertexSet A(Part::one, n1, ai), B(Part::one, n1, bi);

        // N(A u B) == N(A) u N(B), oracle over plain sets
        std::set<int> na, nb, nu;
        for (int v : ai) na.insert(adj.a1[v].begin(), adj.a1[v].end());
        for (int v : bi) nb.insert(adj.a1[v].begin(), adj.a1[v].end());
        nu = na;
        nu.insert(nb.begin(), nb.end());
        VertexSet AB(Part::one, n1, [&] {
            std::set<int> u(ai.begin(), ai.end());
            u.insert(bi.begin(), bi.end());
            return std::vector<int>(u.begin(), u.end());
        }());
        auto got = neighborhood(g, AB).indices();
        CHECK(got == std::vector<int>(nu.begin(), nu.end()));

        // counting identity against per-vertex oracle
        auto wi = random_subset(rng, n2);
        VertexSet W(Part::two, n2, wi);
        std::set<int> wset(wi.begin(), wi.end());
        long long oracle = 0;
        for (int v : ai)
            for (int u : adj.a1[v])
                if (wset.count(u)) ++oracle;
        CHECK(edge_count_between(g, A, W) == oracle);
    }
}

TEST_CASE("property: e(A,B) monotone under set growth") {
    Rng rng(33);
    for (int trial = 0; trial < 60; ++trial) {
        int n1 = rng.range(1, 9), n2 = rng.range(1, 9);
        auto g = random_graph(rng, n1, n2, rng.unit());
        auto ai = random_subset(rng, n1);
        auto bi = random_subset(rng, n2);
        auto grow = [&](std::vector<int> v, int universe) {
            for (int i = 0; i < universe; ++i)
                if (std::find(v.begin(), v.end(), i) == v.end() && rng.unit() < 0.3) v.push_back(i);
            std::sort(v.begin(), v.end());
            return v;
        };
        auto ai2 = grow(ai, n1), bi2 = grow(bi, n2);
        CHECK(edge_count_between(g, VertexSet(Part::one, n1, ai), VertexSet(Part::two, n2, bi)) <=
              edge_count_between(g, VertexSet(Part::one, n1, ai2), VertexSet(Part::two, n2, bi2)));
    }
}

TEST_CASE("property: n=1 expansion equals min-degree threshold") {
    Rng rng(44);
    for (int trial = 0; trial < 60; ++trial) {
        int n1 = rng.range(1, 12), n2 = rng.range(1, 12);
        auto g = random_graph(rng, n1, n2, rng.unit());
        for (long long d = 1; d <= 3; ++d) {
            bool alldeg = true;
            for (int i = 0; i < n1; ++i) alldeg = alldeg && g.degree(Part::one, i) >= d;
            for (int j = 0; j < n2; ++j) alldeg = alldeg && g.degree(Part::two, j) >= d;
            CHECK(is_expanding(g, 1, Ratio(d)).ok == alldeg);
        }
    }
}

TEST_CASE("edge list round trip") {
    std::istringstream in("c comment\np bip 2 2 1\ne 0 0\n");
    auto g = read_edge_list(in);
    CHECK(g.size(Part::one) == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(0, 0));

    std::ostringstream out;
    write_edge_list(g, out);
    CHECK(out.str() == "p bip 2 2 1\ne 0 0\n");

    // canonical save -> load -> save is byte-identical
    Rng rng(55);
    auto h = random_graph(rng, 7, 5, 0.4);
    std::ostringstream s1;
    write_edge_list(h, s1);
    std::istringstream back(s1.str());
    auto h2 = read_edge_list(back);
    std::ostringstream s2;
    write_edge_list(h2, s2);
    CHECK(s1.str() == s2.str());
}

TEST_CASE("edge list parse errors carry line numbers") {
    std::istringstream bad1("p bip 2 2 1\ne 0\n");
    CHECK_THROWS_AS(read_edge_list(bad1), ParseError);
    std::istringstream bad2("e 0 0\n");
    try {
        read_edge_list(bad2);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
    }
    std::istringstream bad3("p bip 2 2 2\ne 0 0\ne 0 0\n");
    CHECK_THROWS_AS(read_edge_list(bad3), ParseError);
    std::istringstream bad4("p bip 2 2 0\nq 1 2\n");
    CHECK_THROWS_AS(read_edge_list(bad4), ParseError);
}

TEST_CASE("induced subgraph keeps edges and maps indices") {
    auto g = BipartiteGraph::from_edges(4, 4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 3}});
    Bitset k1(4), k2(4);
    for (int i : {0, 2, 3}) k1.set(i);
    for (int j : {0, 2}) k2.set(j);
    auto ind = induced_subgraph(g, k1, k2);
    CHECK(ind.graph.size(Part::one) == 3);
    CHECK(ind.graph.size(Part::two) == 2);
    CHECK(ind.graph.edge_count() == 2);  // (0,0) and (2,2)
    CHECK(ind.graph.has_edge(0, 0));
    CHECK(ind.graph.has_edge(1, 1));
    CHECK(ind.to_old1 == std::vector<int>{0, 2, 3});
    CHECK(ind.to_new2[2] == 1);
    CHECK(ind.to_new2[1] == -1);
}
