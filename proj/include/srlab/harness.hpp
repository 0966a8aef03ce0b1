#pragma once
// Coloring strategies, the majority class pick, and the end to end trial
// runner. Reports serialize to JSON with a stable field order; timings are
// kept out of the canonical form so reruns compare byte for byte.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "srlab/joinedness.hpp"
#include "srlab/quasirandom.hpp"
#include "srlab/rng.hpp"
#include "srlab/subdivision.hpp"

namespace srlab {

enum class ColorStrategyKind { uniform_random, biclique_blank, round_robin };

struct ColorStrategy {
    ColorStrategyKind kind = ColorStrategyKind::uniform_random;
    std::uint64_t seed = 0;

    static ColorStrategy uniform(std::uint64_t seed) { return {ColorStrategyKind::uniform_random, seed}; }
    static ColorStrategy blank(std::uint64_t seed) { return {ColorStrategyKind::biclique_blank, seed}; }
    static ColorStrategy cycle() { return {ColorStrategyKind::round_robin, 0}; }
};

inline std::string to_string(ColorStrategyKind k) {
    switch (k) {
        case ColorStrategyKind::uniform_random: return "uniform_random";
        case ColorStrategyKind::biclique_blank: return "biclique_blank";
        case ColorStrategyKind::round_robin: return "round_robin";
    }
    throw std::logic_error("unknown strategy kind");
}

inline ColorStrategyKind strategy_kind_from(const std::string& name) {
    if (name == "uniform_random") return ColorStrategyKind::uniform_random;
    if (name == "biclique_blank") return ColorStrategyKind::biclique_blank;
    if (name == "round_robin") return ColorStrategyKind::round_robin;
    throw std::invalid_argument("unknown coloring strategy: " + name);
}

namespace detail {

// unbiased hash of (seed, i) into 0..r-1 via rejection over fresh streams
inline int hash_color(std::uint64_t seed, std::uint64_t i, int r) {
    std::uint64_t ur = static_cast<std::uint64_t>(r);
    std::uint64_t rem = (UINT64_MAX % ur + 1) % ur;  // 2^64 mod r
    for (std::uint64_t attempt = 0;; ++attempt) {
        std::uint64_t h = counter_hash(seed, i, attempt);
        if (rem == 0 || h < UINT64_MAX - rem + 1) return static_cast<int>(h % ur);
    }
}

}  // namespace detail

// Colors follow the canonical (sorted) edge order of the graph. The blank
// strategy plants an adversarial hole: a random ceil(alpha n1) x ceil(alpha n2)
// pair whose inside edges get color 1 while everything else gets color 0, so
// the majority class is exactly the graph with that pair emptied out.
inline std::vector<int> color_edges(const BipartiteGraph& g, int r, const ColorStrategy& strategy,
                                    Ratio alpha = Ratio(0, 1)) {
    if (r < 1) throw std::invalid_argument("color_edges: need at least one color");
    std::vector<std::pair<int, int>> edges = g.edges();
    std::vector<int> colors(edges.size(), 0);
    if (r == 1) return colors;
    switch (strategy.kind) {
        case ColorStrategyKind::uniform_random:
            for (size_t i = 0; i < edges.size(); ++i) colors[i] = detail::hash_color(strategy.seed, i, r);
            break;
        case ColorStrategyKind::biclique_blank: {
            if (alpha.num <= 0) throw std::invalid_argument("biclique_blank needs a positive alpha");
            int n1 = g.size(Part::one), n2 = g.size(Part::two);
            long long s1 = ceil_mul(alpha, n1), s2 = ceil_mul(alpha, n2);
            if (s1 > n1 || s2 > n2) throw std::invalid_argument("biclique_blank: hole larger than a part");
            Rng rng(strategy.seed);
            Bitset a(n1), b(n2);
            for (int i : rng.sample_indices(n1, static_cast<int>(s1))) a.set(i);
            for (int j : rng.sample_indices(n2, static_cast<int>(s2))) b.set(j);
            for (size_t i = 0; i < edges.size(); ++i)
                colors[i] = a.test(edges[i].first) && b.test(edges[i].second) ? 1 : 0;
            break;
        }
        case ColorStrategyKind::round_robin:
            for (size_t i = 0; i < edges.size(); ++i) colors[i] = static_cast<int>(i % r);
            break;
    }
    return colors;
}

struct ColorSummary {
    std::vector<long long> counts;
    int majority = 0;  // first index on ties
    long long majority_edges = 0;
};

inline ColorSummary summarize_colors(const std::vector<int>& colors, int r) {
    if (r < 1) throw std::invalid_argument("summarize_colors: need at least one color");
    ColorSummary sum;
    sum.counts.assign(r, 0);
    for (int c : colors) {
        if (c < 0 || c >= r) throw std::invalid_argument("summarize_colors: color out of range");
        ++sum.counts[c];
    }
    for (int c = 0; c < r; ++c) {
        if (sum.counts[c] > sum.majority_edges) {
            sum.majority_edges = sum.counts[c];
            sum.majority = c;
        }
    }
    return sum;
}

inline BipartiteGraph class_subgraph(const BipartiteGraph& g, const std::vector<int>& colors, int color) {
    std::vector<std::pair<int, int>> edges = g.edges();
    if (colors.size() != edges.size()) throw std::invalid_argument("class_subgraph: one color per edge required");
    std::vector<std::pair<int, int>> keep;
    for (size_t i = 0; i < edges.size(); ++i)
        if (colors[i] == color) keep.push_back(edges[i]);
    return BipartiteGraph::from_edges(g.size(Part::one), g.size(Part::two), keep);
}

struct TrialConfig {
    int N = 512;
    double p = 40.0 / 512.0;
    Ratio alpha{1, 32};
    int D = 3;
    int r = 2;
    std::uint64_t seed = 1;
    ColorStrategy strategy = ColorStrategy::uniform(1);
    SubdivisionSpec target = SubdivisionSpec::uniform(BaseGraph::single_edge(), 14);
    bool embed = true;           // attempt the embedding when the class is joined
    bool force_embed = false;    // attempt it regardless of the verdict
    bool certified = false;      // exhaustive goodness during growth
    bool enforce_hypotheses = true;
    int greedy_cap = 2;
};

struct TrialReport {
    int N = 0;
    long long host_edges = 0;
    std::vector<long long> color_edge_counts;
    int majority_color = -1;
    long long majority_edges = 0;
    bool pigeonhole_ok = false;
    bool joined = false;
    long long join_s1 = 0, join_s2 = 0;
    std::vector<int> witness_a, witness_b;  // edge-free pair when not joined
    bool embed_attempted = false;
    bool embed_ok = false;
    bool audit_ok = false;
    long long image_vertices = 0;
    EmbedStats stats{};
    std::string error;
    double ms_sample = 0, ms_color = 0, ms_join = 0, ms_embed = 0;
};

inline TrialReport run_trial(const TrialConfig& cfg) {
    using clock = std::chrono::steady_clock;
    auto elapsed = [](clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };
    TrialReport rep;
    rep.N = cfg.N;
    try {
        auto t0 = clock::now();
        BipartiteGraph host = sample_host(cfg.N, cfg.p, cfg.seed);
        rep.ms_sample = elapsed(t0);
        rep.host_edges = host.edge_count();

        t0 = clock::now();
        std::vector<int> colors = color_edges(host, cfg.r, cfg.strategy, cfg.alpha);
        ColorSummary sum = summarize_colors(colors, cfg.r);
        rep.color_edge_counts = sum.counts;
        rep.majority_color = sum.majority;
        rep.majority_edges = sum.majority_edges;
        rep.pigeonhole_ok = sum.majority_edges * cfg.r >= rep.host_edges;
        rep.ms_color = elapsed(t0);
        BipartiteGraph cls = class_subgraph(host, colors, sum.majority);

        t0 = clock::now();
        JoinednessReport joins = is_alpha_joined(cls, cfg.alpha);
        rep.joined = joins.joined;
        rep.join_s1 = joins.s1;
        rep.join_s2 = joins.s2;
        if (joins.witness) {
            rep.witness_a = joins.witness->first.indices();
            rep.witness_b = joins.witness->second.indices();
        }
        rep.ms_join = elapsed(t0);

        if ((rep.joined && cfg.embed) || cfg.force_embed) {
            rep.embed_attempted = true;
            t0 = clock::now();
            EmbedOptions opts;
            opts.certified = cfg.certified;
            opts.greedy_cap = cfg.greedy_cap;
            opts.enforce_hypotheses = cfg.enforce_hypotheses;
            SubdivisionEmbedding emb = embed_subdivision(cls, cfg.target, cfg.alpha, cfg.D, opts);
            rep.embed_ok = true;
            rep.stats = emb.stats;
            AuditReport audit = audit_subdivision(emb);
            rep.audit_ok = audit.ok;
            rep.image_vertices = audit.image_vertices;
            rep.ms_embed = elapsed(t0);
        }
    } catch (const std::exception& e) {
        rep.error = e.what();
    }
    return rep;
}

// ---- JSON forms ----------------------------------------------------------

inline std::string ratio_to_string(Ratio r) { return std::to_string(r.num) + "/" + std::to_string(r.den); }

inline nlohmann::ordered_json config_to_json(const TrialConfig& cfg) {
    nlohmann::ordered_json j;
    j["N"] = cfg.N;
    j["p"] = cfg.p;
    j["alpha"] = ratio_to_string(cfg.alpha);
    j["D"] = cfg.D;
    j["r"] = cfg.r;
    j["seed"] = cfg.seed;
    j["strategy"] = {{"kind", to_string(cfg.strategy.kind)}, {"seed", cfg.strategy.seed}};
    nlohmann::ordered_json base = nlohmann::ordered_json::array();
    for (auto [u, v] : cfg.target.base.edges) base.push_back({u, v});
    j["target"] = {{"n", cfg.target.base.n}, {"edges", base}, {"sigma", cfg.target.sigma}};
    j["embed"] = cfg.embed;
    j["force_embed"] = cfg.force_embed;
    j["certified"] = cfg.certified;
    j["enforce_hypotheses"] = cfg.enforce_hypotheses;
    j["greedy_cap"] = cfg.greedy_cap;
    return j;
}

// missing keys keep the stock desk-scale fixture values
inline TrialConfig config_from_json(const nlohmann::json& j) {
    TrialConfig cfg;
    cfg.N = j.value("N", cfg.N);
    cfg.p = j.value("p", cfg.p);
    if (j.contains("alpha")) cfg.alpha = parse_ratio(j.at("alpha").get<std::string>());
    cfg.D = j.value("D", cfg.D);
    cfg.r = j.value("r", cfg.r);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("strategy")) {
        cfg.strategy.kind = strategy_kind_from(j.at("strategy").at("kind").get<std::string>());
        cfg.strategy.seed = j.at("strategy").value("seed", std::uint64_t{0});
    }
    if (j.contains("target")) {
        const auto& t = j.at("target");
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : t.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        cfg.target.base = BaseGraph::from_edges(t.at("n").get<int>(), edges);
        cfg.target.sigma = t.at("sigma").get<std::vector<int>>();
    }
    cfg.embed = j.value("embed", true);
    cfg.force_embed = j.value("force_embed", false);
    cfg.certified = j.value("certified", false);
    cfg.enforce_hypotheses = j.value("enforce_hypotheses", true);
    cfg.greedy_cap = j.value("greedy_cap", 2);
    return cfg;
}

inline nlohmann::ordered_json report_to_json(const TrialReport& rep, bool include_timings = false) {
    nlohmann::ordered_json j;
    j["N"] = rep.N;
    j["host_edges"] = rep.host_edges;
    j["color_edge_counts"] = rep.color_edge_counts;
    j["majority_color"] = rep.majority_color;
    j["majority_edges"] = rep.majority_edges;
    j["pigeonhole_ok"] = rep.pigeonhole_ok;
    j["joined"] = rep.joined;
    j["join_s1"] = rep.join_s1;
    j["join_s2"] = rep.join_s2;
    j["witness_a"] = rep.witness_a;
    j["witness_b"] = rep.witness_b;
    j["embed_attempted"] = rep.embed_attempted;
    j["embed_ok"] = rep.embed_ok;
    j["audit_ok"] = rep.audit_ok;
    j["image_vertices"] = rep.image_vertices;
    j["stats"] = {{"extends", rep.stats.extends},
                  {"candidates_tried", rep.stats.candidates_tried},
                  {"pruned_vertices", rep.stats.pruned_vertices},
                  {"removed_by_extraction", rep.stats.removed_by_extraction},
                  {"per_edge_tried", rep.stats.per_edge_tried},
                  {"per_edge_pruned", rep.stats.per_edge_pruned}};
    j["error"] = rep.error;
    if (include_timings)
        j["timings_ms"] = {{"sample", rep.ms_sample},
                           {"color", rep.ms_color},
                           {"join", rep.ms_join},
                           {"embed", rep.ms_embed}};
    return j;
}

inline TrialReport report_from_json(const nlohmann::json& j) {
    TrialReport rep;
    rep.N = j.at("N").get<int>();
    rep.host_edges = j.at("host_edges").get<long long>();
    rep.color_edge_counts = j.at("color_edge_counts").get<std::vector<long long>>();
    rep.majority_color = j.at("majority_color").get<int>();
    rep.majority_edges = j.at("majority_edges").get<long long>();
    rep.pigeonhole_ok = j.at("pigeonhole_ok").get<bool>();
    rep.joined = j.at("joined").get<bool>();
    rep.join_s1 = j.at("join_s1").get<long long>();
    rep.join_s2 = j.at("join_s2").get<long long>();
    rep.witness_a = j.at("witness_a").get<std::vector<int>>();
    rep.witness_b = j.at("witness_b").get<std::vector<int>>();
    rep.embed_attempted = j.at("embed_attempted").get<bool>();
    rep.embed_ok = j.at("embed_ok").get<bool>();
    rep.audit_ok = j.at("audit_ok").get<bool>();
    rep.image_vertices = j.at("image_vertices").get<long long>();
    const auto& st = j.at("stats");
    rep.stats.extends = st.at("extends").get<long long>();
    rep.stats.candidates_tried = st.at("candidates_tried").get<long long>();
    rep.stats.pruned_vertices = st.at("pruned_vertices").get<long long>();
    rep.stats.removed_by_extraction = st.at("removed_by_extraction").get<long long>();
    rep.stats.per_edge_tried = st.at("per_edge_tried").get<std::vector<long long>>();
    rep.stats.per_edge_pruned = st.at("per_edge_pruned").get<std::vector<long long>>();
    rep.error = j.at("error").get<std::string>();
    if (j.contains("timings_ms")) {
        rep.ms_sample = j.at("timings_ms").value("sample", 0.0);
        rep.ms_color = j.at("timings_ms").value("color", 0.0);
        rep.ms_join = j.at("timings_ms").value("join", 0.0);
        rep.ms_embed = j.at("timings_ms").value("embed", 0.0);
    }
    return rep;
}

// ---- batches --------------------------------------------------------------

// thread budget: environment override wins, then the requested count
inline int resolve_jobs(int requested) {
    if (const char* env = std::getenv("SRLAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// per-trial seeds are keyed by index, so results do not depend on scheduling
inline TrialConfig trial_in_batch(const TrialConfig& base, int index) {
    TrialConfig cfg = base;
    cfg.seed = counter_hash(base.seed, static_cast<std::uint64_t>(index), 0);
    cfg.strategy.seed = counter_hash(base.strategy.seed, static_cast<std::uint64_t>(index), 1);
    return cfg;
}

inline std::vector<TrialReport> run_batch(const TrialConfig& base, int trials, int jobs = 0) {
    if (trials < 0) throw std::invalid_argument("run_batch: trial count must be nonnegative");
    std::vector<TrialReport> reports(trials);
    int workers = resolve_jobs(jobs);
    if (workers > trials) workers = trials;
    if (workers <= 1) {
        for (int i = 0; i < trials; ++i) reports[i] = run_trial(trial_in_batch(base, i));
        return reports;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < trials; i = next.fetch_add(1))
                reports[i] = run_trial(trial_in_batch(base, i));
        });
    for (auto& th : pool) th.join();
    return reports;
}

inline nlohmann::ordered_json batch_to_json(const std::vector<TrialReport>& reports, bool include_timings = false) {
    nlohmann::ordered_json j;
    j["trials"] = reports.size();
    long long joined = 0, embedded = 0, audited = 0;
    for (const auto& r : reports) {
        joined += r.joined ? 1 : 0;
        embedded += r.embed_ok ? 1 : 0;
        audited += r.audit_ok ? 1 : 0;
    }
    j["joined"] = joined;
    j["embedded"] = embedded;
    j["audited"] = audited;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r, include_timings));
    j["reports"] = arr;
    return j;
}

}  // namespace srlab
