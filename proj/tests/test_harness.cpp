#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <set>

#include "srlab/harness.hpp"

using namespace srlab;

TEST_CASE("round robin and single color strategies") {
    auto g = BipartiteGraph::from_edges(3, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 0}, {2, 2}});
    std::vector<int> rr = color_edges(g, 3, ColorStrategy::cycle());
    CHECK(rr == std::vector<int>{0, 1, 2, 0, 1, 2});
    std::vector<int> one = color_edges(g, 1, ColorStrategy::uniform(7));
    CHECK(one == std::vector<int>(6, 0));
    CHECK_THROWS_AS(color_edges(g, 0, ColorStrategy::cycle()), std::invalid_argument);
}

TEST_CASE("uniform coloring is seeded and roughly balanced") {
    auto g = BipartiteGraph::complete(32, 32);
    std::vector<int> a = color_edges(g, 4, ColorStrategy::uniform(11));
    std::vector<int> b = color_edges(g, 4, ColorStrategy::uniform(11));
    std::vector<int> c = color_edges(g, 4, ColorStrategy::uniform(12));
    CHECK(a == b);
    CHECK(a != c);
    ColorSummary sum = summarize_colors(a, 4);
    for (long long cnt : sum.counts) {
        CHECK(cnt > 150);
        CHECK(cnt < 350);
    }
    CHECK(sum.majority_edges * 4 >= 1024);
}

TEST_CASE("majority pick takes the first index on ties") {
    auto g = BipartiteGraph::from_edges(3, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 0}, {2, 2}});
    ColorSummary sum = summarize_colors(color_edges(g, 3, ColorStrategy::cycle()), 3);
    CHECK(sum.counts == std::vector<long long>{2, 2, 2});
    CHECK(sum.majority == 0);
    CHECK(sum.majority_edges == 2);
    CHECK_THROWS_AS(summarize_colors({0, 3}, 3), std::invalid_argument);
}

TEST_CASE("class subgraphs partition the edges") {
    auto g = sample_host(20, 0.5, 5);
    std::vector<int> colors = color_edges(g, 3, ColorStrategy::uniform(9));
    long long total = 0;
    for (int c = 0; c < 3; ++c) total += class_subgraph(g, colors, c).edge_count();
    CHECK(total == g.edge_count());
    BipartiteGraph zero = class_subgraph(g, colors, 0);
    for (auto [i, j] : zero.edges()) CHECK(g.has_edge(i, j));
}

TEST_CASE("planted hole is recovered through the trial pipeline") {
    // complete host, so the planted pair is the only edge-free pair and the
    // lex-least scan must land exactly on it
    TrialConfig cfg;
    cfg.N = 48;
    cfg.p = 1.0;
    cfg.alpha = Ratio(1, 6);
    cfg.r = 2;
    cfg.seed = 3;
    cfg.strategy = ColorStrategy::blank(21);
    cfg.embed = false;
    TrialReport rep = run_trial(cfg);
    CHECK(rep.error.empty());
    CHECK(rep.host_edges == 48 * 48);
    CHECK(rep.majority_color == 0);
    CHECK(rep.majority_edges == 48 * 48 - 64);
    CHECK(rep.pigeonhole_ok);
    CHECK_FALSE(rep.joined);
    CHECK(rep.witness_a.size() == 8);
    CHECK(rep.witness_b.size() == 8);

    // cross-check the witness against the strategy's own sample
    Rng rng(21);
    std::vector<int> a = rng.sample_indices(48, 8);
    std::vector<int> b = rng.sample_indices(48, 8);
    CHECK(rep.witness_a == a);
    CHECK(rep.witness_b == b);
    CHECK_FALSE(rep.embed_attempted);
}

TEST_CASE("full trial on a complete host embeds and audits") {
    TrialConfig cfg;
    cfg.N = 512;
    cfg.p = 1.0;
    cfg.r = 1;
    cfg.seed = 4;
    cfg.strategy = ColorStrategy::cycle();
    TrialReport rep = run_trial(cfg);
    CHECK(rep.error.empty());
    CHECK(rep.host_edges == 512LL * 512);
    CHECK(rep.majority_edges == rep.host_edges);
    CHECK(rep.pigeonhole_ok);
    CHECK(rep.joined);
    CHECK(rep.embed_attempted);
    CHECK(rep.embed_ok);
    CHECK(rep.audit_ok);
    CHECK(rep.image_vertices == 15);  // one edge subdivided fourteen times
    CHECK(rep.stats.extends > 0);
    CHECK(rep.stats.per_edge_tried.size() == 1);
    CHECK(rep.stats.per_edge_pruned.size() == 1);
}

TEST_CASE("trial captures embedding failures instead of throwing") {
    TrialConfig cfg;
    cfg.N = 48;
    cfg.p = 1.0;
    cfg.alpha = Ratio(1, 6);  // violates the alpha hypothesis for D = 3
    cfg.r = 1;
    cfg.strategy = ColorStrategy::cycle();
    cfg.force_embed = true;
    TrialReport rep = run_trial(cfg);
    CHECK(rep.embed_attempted);
    CHECK_FALSE(rep.embed_ok);
    CHECK_FALSE(rep.error.empty());
}

TEST_CASE("config json round trips byte for byte") {
    TrialConfig cfg;
    cfg.target = SubdivisionSpec::uniform(BaseGraph::star(3), 13);
    cfg.alpha = Ratio(1, 20);
    cfg.strategy = ColorStrategy::blank(77);
    cfg.certified = true;
    std::string once = config_to_json(cfg).dump();
    TrialConfig back = config_from_json(nlohmann::json::parse(once));
    CHECK(config_to_json(back).dump() == once);
    CHECK(back.alpha == Ratio(1, 20));
    CHECK(back.target.base.edges == cfg.target.base.edges);
    CHECK(back.strategy.kind == ColorStrategyKind::biclique_blank);
}

TEST_CASE("report json round trips and stays canonical across reruns") {
    TrialConfig cfg;
    cfg.N = 24;
    cfg.p = 0.5;
    cfg.alpha = Ratio(1, 4);
    cfg.r = 2;
    cfg.seed = 8;
    cfg.strategy = ColorStrategy::uniform(15);
    TrialReport rep = run_trial(cfg);
    std::string canonical = report_to_json(rep).dump();
    CHECK(report_to_json(report_from_json(nlohmann::json::parse(canonical))).dump() == canonical);
    CHECK(report_to_json(run_trial(cfg)).dump() == canonical);
    CHECK(canonical.find("timings") == std::string::npos);
    std::string timed = report_to_json(rep, true).dump();
    CHECK(timed.find("timings_ms") != std::string::npos);
}

TEST_CASE("batches are reproducible no matter the thread count") {
    TrialConfig base;
    base.N = 24;
    base.p = 0.5;
    base.alpha = Ratio(1, 4);
    base.r = 2;
    base.seed = 10;
    base.strategy = ColorStrategy::uniform(20);
    std::vector<TrialReport> seq = run_batch(base, 6, 1);
    std::vector<TrialReport> par = run_batch(base, 6, 3);
    REQUIRE(seq.size() == 6);
    CHECK(batch_to_json(seq).dump() == batch_to_json(par).dump());
    for (const auto& rep : seq) CHECK(rep.pigeonhole_ok);

    // distinct trials really get distinct hosts
    std::set<long long> edge_counts;
    for (const auto& rep : seq) edge_counts.insert(rep.host_edges);
    CHECK(edge_counts.size() > 1);
    CHECK_THROWS_AS(run_batch(base, -1, 1), std::invalid_argument);
}

TEST_CASE("embedding batch summarizes successes") {
    TrialConfig base;
    base.N = 96;
    base.p = 1.0;
    base.alpha = Ratio(1, 6);
    base.r = 1;
    base.strategy = ColorStrategy::cycle();
    base.enforce_hypotheses = false;  // alpha is deliberately coarse here
    std::vector<TrialReport> reports = run_batch(base, 2, 2);
    nlohmann::ordered_json j = batch_to_json(reports);
    CHECK(j["trials"] == 2);
    CHECK(j["joined"] == 2);
    CHECK(j["embedded"] == 2);
    CHECK(j["audited"] == 2);
}

TEST_CASE("thread budget resolution honors the environment override") {
    unsetenv("SRLAB_THREADS");
    CHECK(resolve_jobs(5) == 5);
    CHECK(resolve_jobs(0) >= 1);
    setenv("SRLAB_THREADS", "2", 1);
    CHECK(resolve_jobs(5) == 2);
    CHECK(resolve_jobs(0) == 2);
    setenv("SRLAB_THREADS", "junk", 1);
    CHECK(resolve_jobs(3) == 3);
    unsetenv("SRLAB_THREADS");
}

TEST_CASE("batch seed derivation is stable and index keyed") {
    TrialConfig base;
    base.seed = 99;
    base.strategy.seed = 7;
    TrialConfig a = trial_in_batch(base, 0);
    TrialConfig b = trial_in_batch(base, 1);
    CHECK(a.seed != b.seed);
    CHECK(a.strategy.seed != b.strategy.seed);
    CHECK(trial_in_batch(base, 0).seed == a.seed);
}
