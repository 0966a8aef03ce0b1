// Command line front end: host generation, quasirandomness checks, joinedness
// and extraction certificates, the subdivision embedder, and the numeric
// parameter tooling. Verdict-style commands exit 0 on pass, 3 on a negative
// verdict, 1 on operational errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srlab/base_io.hpp"
#include "srlab/bigraph_io.hpp"
#include "srlab/harness.hpp"
#include "srlab/numerics.hpp"

using namespace srlab;
using ordered_json = nlohmann::ordered_json;

namespace {

void emit(const ordered_json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << std::endl;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    out << j.dump(2) << '\n';
}

nlohmann::json slurp_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return nlohmann::json::parse(in);
}

ordered_json vertex_set_json(const VertexSet& v) {
    ordered_json j;
    j["part"] = part_label(v.part);
    j["indices"] = v.indices();
    return j;
}

ordered_json goodness_json(const GoodnessReport& rep) {
    ordered_json j;
    j["pass"] = rep.pass;
    j["checked"] = rep.checked;
    j["partial"] = rep.partial;
    if (rep.witness) {
        j["witness"] = vertex_set_json(rep.witness->X);
        j["witness"]["deficiency"] = ratio_to_string(rep.witness->R);
    }
    return j;
}

// sigma spec: a bare integer for every edge, or "edge:length" pairs
// separated by commas covering each edge exactly once
std::vector<int> parse_sigma(const std::string& text, int edge_count) {
    if (text.find(':') == std::string::npos)
        return std::vector<int>(edge_count, std::stoi(text));
    std::vector<int> sigma(edge_count, -1);
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        size_t colon = item.find(':');
        if (colon == std::string::npos) throw Error("sigma entries must look like edge:length, got '" + item + "'");
        int e = std::stoi(item.substr(0, colon));
        int len = std::stoi(item.substr(colon + 1));
        if (e < 0 || e >= edge_count) throw Error("sigma names unknown edge " + std::to_string(e));
        if (sigma[e] != -1) throw Error("sigma repeats edge " + std::to_string(e));
        sigma[e] = len;
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    for (int e = 0; e < edge_count; ++e)
        if (sigma[e] == -1) throw Error("sigma is missing edge " + std::to_string(e));
    return sigma;
}

int cmd_gen(int N, double p, std::uint64_t seed, int jobs, const std::string& out) {
    BipartiteGraph g = sample_host(N, p, seed, jobs);
    save_edge_list(g, out);
    ordered_json j;
    j["N"] = N;
    j["edges"] = g.edge_count();
    j["out"] = out;
    emit(j, "");
    return 0;
}

int cmd_check(const std::string& in, const std::string& mode, double p, double epsilon, double delta, int c3n,
              long long n, int trials, std::uint64_t seed, const std::string& out) {
    BipartiteGraph g = load_edge_list(in);
    if (g.size(Part::one) != g.size(Part::two)) throw Error("check expects an N+N host");
    QuasiParams q;
    q.N = g.size(Part::one);
    q.p = p;
    q.epsilon = epsilon;
    q.delta = delta;
    q.c3n = c3n;
    ordered_json j;
    j["mode"] = mode;
    bool pass = false;
    if (mode == "density") {
        DensityReport rep = check_density(g, q, n);
        pass = rep.pass;
        j["pass"] = rep.pass;
        j["edges"] = rep.edges;
        j["expected"] = rep.expected;
        j["lo"] = rep.lo;
        j["hi"] = rep.hi;
    } else if (mode == "discrepancy") {
        DiscrepancyMode dm = trials > 0 ? DiscrepancyMode::Sampled(trials, seed) : DiscrepancyMode::Exhaustive();
        DiscrepancyReport rep = check_discrepancy(g, q, dm);
        pass = rep.pass;
        j["pass"] = rep.pass;
        j["max_deviation"] = rep.max_relative_deviation;
        j["worst_U"] = rep.worst_U;
        j["worst_W"] = rep.worst_W;
        j["checked_pairs"] = rep.checked_pairs;
    } else {
        throw Error("unknown check mode '" + mode + "'");
    }
    emit(j, out);
    return pass ? 0 : 3;
}

int cmd_check_joined(const std::string& in, const std::string& alpha_text, const std::string& out) {
    BipartiteGraph g = load_edge_list(in);
    Ratio alpha = parse_ratio(alpha_text);
    JoinednessReport rep = is_alpha_joined(g, alpha);
    ordered_json j;
    j["alpha"] = ratio_to_string(alpha);
    j["joined"] = rep.joined;
    j["s1"] = rep.s1;
    j["s2"] = rep.s2;
    j["checked"] = rep.checked;
    if (rep.witness) {
        j["witness_a"] = rep.witness->first.indices();
        j["witness_b"] = rep.witness->second.indices();
    }
    emit(j, out);
    return rep.joined ? 0 : 3;
}

ordered_json extraction_json(const ExtractionResult& res) {
    ordered_json j;
    j["alpha"] = ratio_to_string(res.alpha);
    j["N"] = res.N;
    j["s"] = res.s;
    j["Y1"] = res.Y1;
    j["Y2"] = res.Y2;
    j["removed1"] = res.removed1;
    j["removed2"] = res.removed2;
    ordered_json log = ordered_json::array();
    for (const auto& entry : res.log) {
        ordered_json el;
        el["part"] = part_label(entry.part);
        el["X"] = entry.X;
        el["fresh"] = entry.fresh;
        log.push_back(el);
    }
    j["log"] = log;
    j["kept_size1"] = res.kept->size(Part::one);
    j["kept_size2"] = res.kept->size(Part::two);
    j["kept_edges"] = res.kept->edge_count();
    j["yprime1"] = res.yprime1;
    j["yprime2"] = res.yprime2;
    return j;
}

int cmd_extract(const std::string& in, const std::string& alpha_text, const std::string& out_report,
                const std::string& out_graph, bool verify, std::optional<std::uint64_t> y_seed) {
    BipartiteGraph g = load_edge_list(in);
    Ratio alpha = parse_ratio(alpha_text);
    ordered_json j;
    try {
        ExtractionResult res = extract_expander(g, alpha, y_seed);
        j = extraction_json(res);
        if (verify) {
            ExtractionCheck check = verify_extraction(res);
            ordered_json v;
            v["pass"] = check.pass;
            v["small_sets"] = check.small_sets;
            v["large_sets"] = check.large_sets;
            v["small_ratio"] = ratio_to_string(check.small_ratio);
            v["large_threshold"] = ratio_to_string(check.large_threshold);
            if (check.witness) {
                v["witness"] = vertex_set_json(*check.witness);
                v["witness_neighbors"] = check.witness_neighbors;
            }
            v["expansion_ok"] = check.expansion.ok;
            if (check.expansion.witness) v["expansion_witness"] = vertex_set_json(*check.expansion.witness);
            v["expansion_bound"] = check.expansion_bound;
            v["expansion_ratio"] = ratio_to_string(check.expansion_ratio);
            j["verify"] = v;
        }
        if (!out_graph.empty()) save_edge_list(*res.kept, out_graph);
        emit(j, out_report);
        if (verify && !j["verify"]["pass"].get<bool>()) return 3;
        return 0;
    } catch (const RemovalOverflowError& e) {
        j["error"] = e.what();
        j["part"] = part_label(e.part);
        j["removed1"] = e.removed1;
        j["removed2"] = e.removed2;
        if (e.witness) {
            j["witness_a"] = e.witness->first.indices();
            j["witness_b"] = e.witness->second.indices();
        }
        emit(j, out_report);
        return 3;
    }
}

int cmd_embed(const std::string& host_path, const std::string& base_path, const std::string& sigma_text,
              const std::string& alpha_text, int D, const std::string& mode, int greedy_cap, bool mirror,
              bool no_hypotheses, std::optional<std::uint64_t> y_seed, const std::string& out,
              const std::string& report_path) {
    BipartiteGraph host = load_edge_list(host_path);
    SubdivisionSpec spec;
    spec.base = load_base_graph(base_path);
    spec.sigma = parse_sigma(sigma_text, static_cast<int>(spec.base.edges.size()));
    Ratio alpha = parse_ratio(alpha_text);
    int promoted = std::max(3, spec.base.max_degree());
    if (D == 0) D = promoted;
    if (D < promoted) throw Error("D must be at least max(3, base max degree) = " + std::to_string(promoted));

    EmbedOptions opts;
    opts.certified = mode == "certified";
    opts.greedy_cap = greedy_cap;
    opts.enforce_hypotheses = !no_hypotheses;
    opts.mirror = mirror;
    opts.y_seed = y_seed;

    ordered_json j;
    j["alpha"] = ratio_to_string(alpha);
    j["D"] = D;
    j["mode"] = mode;
    HypothesisReport hyp = check_hypotheses(spec, host.size(Part::one), alpha, D);
    j["hypotheses"] = {{"pass", hyp.pass},         {"s", hyp.s},
                       {"k", hyp.k},               {"total_vertices", hyp.total_vertices},
                       {"violations", hyp.violations}};
    try {
        SubdivisionEmbedding res = embed_subdivision(host, spec, alpha, D, opts);
        AuditReport audit = audit_subdivision(res);
        j["embedded"] = true;
        j["stats"] = {{"extends", res.stats.extends},
                      {"candidates_tried", res.stats.candidates_tried},
                      {"pruned_vertices", res.stats.pruned_vertices},
                      {"removed_by_extraction", res.stats.removed_by_extraction},
                      {"per_edge_tried", res.stats.per_edge_tried},
                      {"per_edge_pruned", res.stats.per_edge_pruned}};
        j["audit"] = {{"ok", audit.ok},
                      {"image_vertices", audit.image_vertices},
                      {"path_edge_counts", audit.path_edge_counts}};
        j["part_of_color"] = {part_label(res.part_of_color[0]), part_label(res.part_of_color[1])};
        j["host_of_original"] = res.host_of_original;
        if (!out.empty()) {
            std::ofstream tsv(out);
            if (!tsv) throw Error("cannot open " + out);
            tsv << res.embedding.to_tsv();
        }
        emit(j, report_path);
        return audit.ok ? 0 : 3;
    } catch (const NoCrossingEdgeError& e) {
        j["embedded"] = false;
        j["error"] = e.what();
        j["edge_index"] = e.edge_index;
        j["side_one"] = e.side_one;
        j["side_two"] = e.side_two;
        emit(j, report_path);
        return 3;
    } catch (const RemovalOverflowError& e) {
        j["embedded"] = false;
        j["error"] = e.what();
        if (e.witness) {
            j["witness_a"] = e.witness->first.indices();
            j["witness_b"] = e.witness->second.indices();
        }
        emit(j, report_path);
        return 3;
    } catch (const HypothesisViolationError& e) {
        j["embedded"] = false;
        j["error"] = e.what();
        emit(j, report_path);
        return 3;
    }
}

int cmd_params(int r, int D, long long n, const std::string& out) {
    RamseyParams q = compute_params(r, D, n);
    DeltaWindowReport window = check_delta_window(q);
    ordered_json j;
    j["r"] = q.r;
    j["D"] = q.D;
    j["n"] = q.n;
    j["alpha"] = q.alpha;
    j["c1_log"] = q.c1_log;
    j["c2"] = q.c2;
    j["c3"] = q.c3;
    j["delta"] = q.delta;
    j["lambda"] = q.lambda;
    j["N_log"] = q.N_log;
    j["p"] = q.p;
    j["delta_window"] = {{"pass", window.pass},
                         {"threshold", window.threshold},
                         {"L", window.L},
                         {"upper_margin", window.upper_margin},
                         {"lower_margin", window.lower_margin}};
    EdgeBoundReport eb = check_edge_bound(q);
    j["edge_bound"] = {{"edges_log2", eb.edges_log2},
                       {"bound_log2", eb.bound_log2},
                       {"margin", eb.margin},
                       {"holds", eb.holds}};
    emit(j, out);
    return 0;
}

std::pair<int, int> parse_range(const std::string& text) {
    size_t dots = text.find("..");
    if (dots == std::string::npos) {
        int v = std::stoi(text);
        return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

int cmd_verify_numerics(const std::string& d_range, const std::string& out) {
    auto [d_lo, d_hi] = parse_range(d_range);
    if (d_lo < 2 || d_hi < d_lo) throw Error("bad D range");
    ordered_json checks = ordered_json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool pass, const ordered_json& detail) {
        checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
        all = all && pass;
    };

    bool f_ok = true;
    double worst_gap = 0;
    for (int D = d_lo; D <= d_hi; ++D) {
        double alpha = 1.0 / (6.0 * D + 14.0);
        f_ok = f_ok && f_alpha(alpha) < 1.0;
        double gap = taylor_gap(alpha);
        if (gap > 10.0 * alpha * alpha * alpha) f_ok = false;
        worst_gap = std::max(worst_gap, gap / (alpha * alpha * alpha));
    }
    record("f_below_one_and_taylor", f_ok, {{"D_lo", d_lo}, {"D_hi", d_hi}, {"worst_gap_over_alpha3", worst_gap}});

    bool window_ok = true;
    for (int r = 2; r <= 10; ++r)
        for (int D = 2; D <= 10; ++D) window_ok = window_ok && check_delta_window(compute_params(r, D, 1000)).pass;
    record("delta_window_grid", window_ok, {{"r", "2..10"}, {"D", "2..10"}});

    double sb = size_bound_log2(2, 2, 1000000);
    record("size_bound_log2", std::fabs(sb - 574.45) <= 0.01, {{"value", sb}});

    RamseyParams q = compute_params(2, 3, 1000);
    InductionBound base = induction_rhs(1000, 1000.0 * q.c3, q);
    record("induction_base_zero", base.bracket == 0.0 && base.value.sign == 0, {{"bracket", base.bracket}});

    ContradictionReport con = check_contradiction(compute_params(10, 3, 1000000), 1e6);
    record("contradiction_r10", con.lower_exceeds_upper,
           {{"achieved", con.achieved}, {"lower", con.lower}, {"upper", con.upper}});

    ordered_json j;
    j["pass"] = all;
    j["checks"] = checks;
    emit(j, out);
    return all ? 0 : 3;
}

int cmd_trial(const std::string& config_path, bool timings, const std::string& out) {
    TrialConfig cfg = config_from_json(slurp_json(config_path));
    TrialReport rep = run_trial(cfg);
    emit(report_to_json(rep, timings), out);
    return 0;
}

int cmd_batch(const std::string& config_path, int trials, int jobs, bool timings, const std::string& out) {
    TrialConfig cfg = config_from_json(slurp_json(config_path));
    std::vector<TrialReport> reports = run_batch(cfg, trials, jobs);
    emit(batch_to_json(reports, timings), out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bipartite subdivision embedding toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    // gen
    {
        auto* sub = app.add_subcommand("gen", "sample a random N+N host and write it as an edge list");
        auto N = std::make_shared<int>(0);
        auto p = std::make_shared<double>(0.5);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto jobs = std::make_shared<int>(1);
        auto out = std::make_shared<std::string>();
        sub->add_option("--N", *N, "per-part vertex count")->required();
        sub->add_option("--p", *p, "edge probability")->required();
        sub->add_option("--seed", *seed, "sampling seed")->required();
        sub->add_option("--jobs", *jobs, "sampling threads");
        sub->add_option("--out", *out, "output path")->required();
        sub->callback([=, &rc] { rc = cmd_gen(*N, *p, *seed, *jobs, *out); });
    }

    // check
    {
        auto* sub = app.add_subcommand("check", "density or discrepancy certificate for a host");
        auto in = std::make_shared<std::string>();
        auto mode = std::make_shared<std::string>("density");
        auto p = std::make_shared<double>(0.5);
        auto epsilon = std::make_shared<double>(0.25);
        auto delta = std::make_shared<double>(0.5);
        auto c3n = std::make_shared<int>(1);
        auto n = std::make_shared<long long>(1);
        auto trials = std::make_shared<int>(0);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto out = std::make_shared<std::string>();
        sub->add_option("--in", *in, "host edge list")->required();
        sub->add_option("--mode", *mode, "density or discrepancy")->required();
        sub->add_option("--p", *p, "edge probability the host was sampled at")->required();
        sub->add_option("--epsilon", *epsilon, "density window exponent");
        sub->add_option("--delta", *delta, "relative deviation bound");
        sub->add_option("--c3n", *c3n, "minimum subset size for discrepancy pairs");
        sub->add_option("--n", *n, "target vertex count for the density window");
        sub->add_option("--trials", *trials, "sampled pairs; 0 means exhaustive");
        sub->add_option("--seed", *seed, "sampling seed for the sampled mode");
        sub->add_option("--out", *out, "report path (stdout when omitted)");
        sub->callback(
            [=, &rc] { rc = cmd_check(*in, *mode, *p, *epsilon, *delta, *c3n, *n, *trials, *seed, *out); });
    }

    // check-joined
    {
        auto* sub = app.add_subcommand("check-joined", "test whether a host is alpha-joined");
        auto in = std::make_shared<std::string>();
        auto alpha = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        sub->add_option("--in", *in, "host edge list")->required();
        sub->add_option("--alpha", *alpha, "joinedness parameter, e.g. 1/6 or 0.0625")->required();
        sub->add_option("--out", *out, "report path (stdout when omitted)");
        sub->callback([=, &rc] { rc = cmd_check_joined(*in, *alpha, *out); });
    }

    // extract
    {
        auto* sub = app.add_subcommand("extract", "remove sparse sets until the rest expands");
        auto in = std::make_shared<std::string>();
        auto alpha = std::make_shared<std::string>();
        auto out_report = std::make_shared<std::string>();
        auto out_graph = std::make_shared<std::string>();
        auto verify = std::make_shared<bool>(false);
        auto y_seed = std::make_shared<std::int64_t>(-1);
        sub->add_option("--in", *in, "host edge list")->required();
        sub->add_option("--alpha", *alpha, "extraction parameter")->required();
        sub->add_option("--out-report", *out_report, "report path (stdout when omitted)");
        sub->add_option("--out-graph", *out_graph, "write the kept graph here");
        sub->add_flag("--verify", *verify, "re-verify the kept graph by full enumeration");
        sub->add_option("--y-seed", *y_seed, "sample reservoirs with this seed instead of lowest indices");
        sub->callback([=, &rc] {
            std::optional<std::uint64_t> ys;
            if (*y_seed >= 0) ys = static_cast<std::uint64_t>(*y_seed);
            rc = cmd_extract(*in, *alpha, *out_report, *out_graph, *verify, ys);
        });
    }

    // embed
    {
        auto* sub = app.add_subcommand("embed", "embed a subdivided base graph into a host");
        auto host = std::make_shared<std::string>();
        auto base = std::make_shared<std::string>();
        auto sigma = std::make_shared<std::string>();
        auto alpha = std::make_shared<std::string>();
        auto D = std::make_shared<int>(0);
        auto mode = std::make_shared<std::string>("greedy");
        auto cap = std::make_shared<int>(2);
        auto mirror = std::make_shared<bool>(false);
        auto no_hyp = std::make_shared<bool>(false);
        auto y_seed = std::make_shared<std::int64_t>(-1);
        auto out = std::make_shared<std::string>();
        auto report = std::make_shared<std::string>();
        sub->add_option("--host", *host, "host edge list")->required();
        sub->add_option("--base", *base, "base graph file ('p base n m' header)")->required();
        sub->add_option("--sigma", *sigma, "path length per edge: one integer or edge:length pairs")->required();
        sub->add_option("--alpha", *alpha, "joinedness parameter")->required();
        sub->add_option("--D", *D, "degree budget; default max(3, base max degree)");
        sub->add_option("--mode", *mode, "certified or greedy")->check(CLI::IsMember({"certified", "greedy"}));
        sub->add_option("--greedy-cap", *cap, "goodness check size cap in greedy mode");
        sub->add_flag("--mirror", *mirror, "swap which color class lands in host part one");
        sub->add_flag("--no-hypotheses", *no_hyp, "attempt the embedding even if the hypotheses fail");
        sub->add_option("--y-seed", *y_seed, "seeded reservoirs for the extraction step");
        sub->add_option("--out", *out, "embedding tsv path");
        sub->add_option("--report", *report, "report path (stdout when omitted)");
        sub->callback([=, &rc] {
            std::optional<std::uint64_t> ys;
            if (*y_seed >= 0) ys = static_cast<std::uint64_t>(*y_seed);
            rc = cmd_embed(*host, *base, *sigma, *alpha, *D, *mode, *cap, *mirror, *no_hyp, ys, *out, *report);
        });
    }

    // params
    {
        auto* sub = app.add_subcommand("params", "print the constant system for (r, D, n)");
        auto r = std::make_shared<int>(2);
        auto D = std::make_shared<int>(2);
        auto n = std::make_shared<long long>(1);
        auto out = std::make_shared<std::string>();
        sub->add_option("--r", *r, "color count")->required();
        sub->add_option("--D", *D, "degree bound")->required();
        sub->add_option("--n", *n, "target vertex count")->required();
        sub->add_option("--out", *out, "report path (stdout when omitted)");
        sub->callback([=, &rc] { rc = cmd_params(*r, *D, *n, *out); });
    }

    // verify-numerics
    {
        auto* sub = app.add_subcommand("verify-numerics", "re-check the closed-form numeric claims");
        auto range = std::make_shared<std::string>("2..64");
        auto out = std::make_shared<std::string>();
        sub->add_option("--D-range", *range, "inclusive D range, e.g. 2..64");
        sub->add_option("--out", *out, "report path (stdout when omitted)");
        sub->callback([=, &rc] { rc = cmd_verify_numerics(*range, *out); });
    }

    // trial
    {
        auto* sub = app.add_subcommand("trial", "sample, color, pick the majority class, check, embed");
        auto config = std::make_shared<std::string>();
        auto timings = std::make_shared<bool>(false);
        auto out = std::make_shared<std::string>();
        sub->add_option("--config", *config, "trial config json")->required();
        sub->add_flag("--timings", *timings, "include timings in the report");
        sub->add_option("--out", *out, "report path (stdout when omitted)");
        sub->callback([=, &rc] { rc = cmd_trial(*config, *timings, *out); });
    }

    // batch
    {
        auto* sub = app.add_subcommand("batch", "run many trials with index-keyed seeds");
        auto config = std::make_shared<std::string>();
        auto trials = std::make_shared<int>(1);
        auto jobs = std::make_shared<int>(0);
        auto timings = std::make_shared<bool>(false);
        auto out = std::make_shared<std::string>();
        sub->add_option("--config", *config, "base trial config json")->required();
        sub->add_option("--trials", *trials, "number of trials")->required();
        sub->add_option("--jobs", *jobs, "worker threads; 0 picks a default, env SRLAB_THREADS overrides");
        sub->add_flag("--timings", *timings, "include timings in the reports");
        sub->add_option("--out", *out, "report path (stdout when omitted)");
        sub->callback([=, &rc] { rc = cmd_batch(*config, *trials, *jobs, *timings, *out); });
    }

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return rc;
}
