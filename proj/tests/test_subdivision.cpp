#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <set>
#include <vector>

#include "srlab/subdivision.hpp"

using namespace srlab;

namespace {

// consecutive picture vertices must sit on host edges with alternating parts
void check_embedded_paths(const SubdivisionEmbedding& out) {
    const BipartiteGraph& kept = *out.extraction.kept;
    for (size_t e = 0; e < out.shape.base_edges.size(); ++e) {
        auto [u, v] = out.shape.base_edges[e];
        std::vector<int> walk{u};
        for (int w : out.shape.path_vertices[e]) walk.push_back(w);
        walk.push_back(v);
        REQUIRE(static_cast<int>(walk.size()) == out.shape.sigma[e] + 1);
        for (size_t i = 0; i + 1 < walk.size(); ++i) {
            int a = walk[i], b = walk[i + 1];
            REQUIRE(out.shape.color[a] != out.shape.color[b]);
            Part pa = out.part_of_color[out.shape.color[a]];
            int ha = out.host_of[a], hb = out.host_of[b];
            bool edge = pa == Part::one ? kept.has_edge(ha, hb) : kept.has_edge(hb, ha);
            REQUIRE(edge);
        }
    }
    // injectivity per part
    for (Part p : {Part::one, Part::two}) {
        std::set<int> seen;
        for (int i = 0; i < out.shape.total; ++i)
            if (out.part_of_color[out.shape.color[i]] == p) CHECK(seen.insert(out.host_of[i]).second);
    }
}

}  // namespace

TEST_CASE("base graph construction and validation") {
    BaseGraph p3 = BaseGraph::path(2);
    CHECK(p3.n == 3);
    CHECK(p3.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK(p3.max_degree() == 2);
    CHECK(BaseGraph::star(3).max_degree() == 3);
    CHECK(BaseGraph::cycle(4).edges.size() == 4);
    CHECK(BaseGraph::complete(4).edges.size() == 6);
    CHECK(BaseGraph::single_edge().max_degree() == 1);

    CHECK_THROWS_AS(BaseGraph::from_edges(3, {{0, 0}}), InvalidVertexError);
    CHECK_THROWS_AS(BaseGraph::from_edges(3, {{0, 3}}), InvalidVertexError);
    CHECK_THROWS_AS(BaseGraph::from_edges(3, {{0, 1}, {1, 0}}), DuplicateEdgeError);
}

TEST_CASE("subdividing a single edge lays out a path") {
    SubdivisionSpec spec = SubdivisionSpec::uniform(BaseGraph::single_edge(), 4);
    SubdividedGraph g = build_subdivision(spec);
    CHECK(g.total == 5);
    CHECK(g.path_vertices[0] == std::vector<int>{2, 3, 4});
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 2}, {2, 3}, {3, 4}, {4, 1}});
    // distance four: both endpoints in the same class
    CHECK(g.color[0] == 0);
    CHECK(g.color[1] == 0);
    CHECK(g.color[2] == 1);
    CHECK(g.color[3] == 0);
    CHECK(g.color[4] == 1);
}

TEST_CASE("subdivision keeps sigma one edges intact") {
    SubdivisionSpec spec = SubdivisionSpec::uniform(BaseGraph::cycle(4), 1);
    SubdividedGraph g = build_subdivision(spec);
    CHECK(g.total == 4);
    CHECK(g.edges.size() == 4);
    for (auto& path : g.path_vertices) CHECK(path.empty());
    CHECK(g.color == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("odd total cycle length is rejected, even is accepted") {
    CHECK_THROWS_AS(build_subdivision(SubdivisionSpec::uniform(BaseGraph::cycle(3), 1)), NonBipartiteError);
    CHECK_THROWS_AS(build_subdivision(SubdivisionSpec::uniform(BaseGraph::cycle(3), 3)), NonBipartiteError);

    SubdivisionSpec mixed;
    mixed.base = BaseGraph::cycle(3);
    mixed.sigma = {1, 1, 2};  // total length four
    SubdividedGraph g = build_subdivision(mixed);
    CHECK(g.total == 4);
    CHECK(g.color[0] == 0);

    CHECK(build_subdivision(SubdivisionSpec::uniform(BaseGraph::cycle(3), 2)).total == 6);
}

TEST_CASE("sigma list length and values are validated") {
    SubdivisionSpec spec;
    spec.base = BaseGraph::path(2);
    spec.sigma = {3};
    CHECK_THROWS_AS(build_subdivision(spec), std::invalid_argument);
    spec.sigma = {3, 0};
    CHECK_THROWS_AS(build_subdivision(spec), std::invalid_argument);
}

TEST_CASE("hypothesis check measures every condition") {
    SubdivisionSpec spec = SubdivisionSpec::uniform(BaseGraph::single_edge(), 31);
    HypothesisReport rep = check_hypotheses(spec, 1024, Ratio(1, 32), 3);
    CHECK(rep.pass);
    CHECK(rep.s == 32);
    CHECK(rep.k == 5);
    CHECK(rep.total_vertices == 32);
    CHECK(rep.violations.empty());

    // same shape on a quarter of the host: too many picture vertices
    HypothesisReport small = check_hypotheses(spec, 256, Ratio(1, 32), 3);
    CHECK_FALSE(small.pass);
    CHECK_FALSE(small.host_large_enough);
    CHECK(small.alpha_small_enough);
    CHECK(small.short_edges.empty());

    // alpha above 1/(6D+14)
    HypothesisReport wide = check_hypotheses(spec, 1024, Ratio(1, 16), 3);
    CHECK_FALSE(wide.alpha_small_enough);
    CHECK_FALSE(wide.pass);

    // degree budget below the base degree or below three
    HypothesisReport deg = check_hypotheses(SubdivisionSpec::uniform(BaseGraph::star(4), 31), 4096, Ratio(1, 38), 3);
    CHECK_FALSE(deg.degree_enough);
    HypothesisReport two = check_hypotheses(spec, 1024, Ratio(1, 32), 2);
    CHECK_FALSE(two.degree_enough);

    // sigma below the parity minimum: k = 5 needs odd lengths >= 11
    HypothesisReport shortrep = check_hypotheses(SubdivisionSpec::uniform(BaseGraph::single_edge(), 9), 1024,
                                                 Ratio(1, 32), 3);
    CHECK_FALSE(shortrep.pass);
    CHECK(shortrep.short_edges == std::vector<int>{0});

    // odd cycle
    HypothesisReport odd = check_hypotheses(SubdivisionSpec::uniform(BaseGraph::cycle(3), 11), 4096, Ratio(1, 32), 3);
    CHECK_FALSE(odd.bipartite);
}

TEST_CASE("embedding a long subdivided edge into a complete host") {
    auto host = BipartiteGraph::complete(384, 384);
    SubdivisionSpec spec = SubdivisionSpec::uniform(BaseGraph::single_edge(), 11);
    SubdivisionEmbedding out = embed_subdivision(host, spec, Ratio(1, 32), 3);

    CHECK(out.shape.total == 12);
    CHECK(out.extraction.removed1.empty());
    CHECK(out.extraction.removed2.empty());
    // endpoints at distance eleven land in different classes and parts
    CHECK(out.shape.color[0] != out.shape.color[1]);
    CHECK(out.part_of_color[0] == Part::one);
    CHECK(out.host_of[0] == 0);  // lowest reservoir slot
    check_embedded_paths(out);

    CHECK(out.embedding.mapped_count(Part::one) + out.embedding.mapped_count(Part::two) == 12);
    CHECK(out.embedding.pattern().max_degree() <= 3);
    CHECK(out.stats.extends > 0);
    CHECK(out.stats.pruned_vertices > 0);
    CHECK(out.stats.candidates_tried >= out.stats.extends);
}

TEST_CASE("embedding an even length edge uses asymmetric halves") {
    auto host = BipartiteGraph::complete(448, 448);
    SubdivisionSpec spec = SubdivisionSpec::uniform(BaseGraph::single_edge(), 12);
    SubdivisionEmbedding out = embed_subdivision(host, spec, Ratio(1, 32), 3);

    CHECK(out.shape.total == 13);
    CHECK(out.shape.color[0] == out.shape.color[1]);  // even distance, same class
    check_embedded_paths(out);
}

TEST_CASE("embedding a two edge path with mixed parities") {
    auto host = BipartiteGraph::complete(896, 896);
    SubdivisionSpec spec;
    spec.base = BaseGraph::path(2);
    spec.sigma = {13, 14};
    SubdivisionEmbedding out = embed_subdivision(host, spec, Ratio(1, 32), 3);

    CHECK(out.shape.total == 28);
    check_embedded_paths(out);
    CHECK(out.embedding.pattern().max_degree() <= 3);
}

TEST_CASE("mirroring swaps the host parts of the two classes") {
    auto host = BipartiteGraph::complete(384, 384);
    SubdivisionSpec spec = SubdivisionSpec::uniform(BaseGraph::single_edge(), 11);
    EmbedOptions opts;
    opts.mirror = true;
    SubdivisionEmbedding out = embed_subdivision(host, spec, Ratio(1, 32), 3, opts);
    CHECK(out.part_of_color[0] == Part::two);
    CHECK(out.part_of_color[1] == Part::one);
    check_embedded_paths(out);
}

TEST_CASE("certified growth works on a small complete host") {
    auto host = BipartiteGraph::complete(384, 384);
    SubdivisionSpec spec = SubdivisionSpec::uniform(BaseGraph::single_edge(), 11);
    EmbedOptions opts;
    opts.certified = true;
    SubdivisionEmbedding out = embed_subdivision(host, spec, Ratio(1, 32), 3, opts);
    check_embedded_paths(out);
}

TEST_CASE("hypothesis violations abort the embedding unless disabled") {
    auto host = BipartiteGraph::complete(384, 384);
    // s = 12 gives branch height four, so odd lengths below nine are short
    SubdivisionSpec spec = SubdivisionSpec::uniform(BaseGraph::single_edge(), 7);
    CHECK_THROWS_AS(embed_subdivision(host, spec, Ratio(1, 32), 3), HypothesisViolationError);
    CHECK_THROWS_WITH(embed_subdivision(host, spec, Ratio(1, 32), 3),
                      Catch::Matchers::ContainsSubstring("below the minimum"));
}

TEST_CASE("two disconnected blocks leave no crossing edge to find") {
    // hosts split into an even and an odd block; trees grown from the two
    // reservoir slots stay inside their blocks, so the final join must fail
    BipartiteGraph::Builder b(66, 66);
    for (int i = 0; i < 66; ++i)
        for (int j = i % 2; j < 66; j += 2) b.add_edge(i, j);
    auto host = std::move(b).build();

    SubdivisionSpec spec = SubdivisionSpec::uniform(BaseGraph::single_edge(), 10);
    EmbedOptions opts;
    opts.enforce_hypotheses = false;
    try {
        embed_subdivision(host, spec, Ratio(1, 6), 3, opts);
        FAIL("expected NoCrossingEdgeError");
    } catch (const NoCrossingEdgeError& e) {
        CHECK(e.edge_index == 0);
        CHECK(e.side_one.size() == 11);
        CHECK(e.side_two.size() == 11);
        for (int a : e.side_one) CHECK(a % 2 == 0);
        for (int bb : e.side_two) CHECK(bb % 2 == 1);
    }
}
