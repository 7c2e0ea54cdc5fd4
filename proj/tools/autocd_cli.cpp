#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "autocd/afs.hpp"
#include "autocd/bench.hpp"
#include "autocd/crv.hpp"
#include "autocd/dataset.hpp"
#include "autocd/discovery.hpp"
#include "autocd/graph_io.hpp"
#include "autocd/oct.hpp"
#include "autocd/rng.hpp"
#include "autocd/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace autocd;

namespace {

constexpr const char* kVersion = "0.1.0";

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string hash_hex(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Stage wall times go to a separate file so run directories stay
// byte-identical across reruns with the same seed.
struct Timings {
    std::vector<std::pair<std::string, double>> entries;
    std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();

    void stage(const std::string& name) {
        const auto now = std::chrono::steady_clock::now();
        entries.emplace_back(name, std::chrono::duration<double, std::milli>(now - mark).count());
        mark = now;
    }
    void save(const fs::path& path) const {
        std::string out;
        char buf[64];
        for (const auto& [name, ms] : entries) {
            std::snprintf(buf, sizeof(buf), "%s\t%.1f ms\n", name.c_str(), ms);
            out += buf;
        }
        write_text(path, out);
    }
};

json afs_config_to_json(const AfsConfig& cfg) {
    return json{{"selector", to_string(cfg.selector)},
                {"alpha", cfg.alpha},
                {"ci", to_string(cfg.ci)},
                {"k_runs", cfg.k_runs},
                {"max_k", cfg.max_k},
                {"forest", {{"n_trees", cfg.forest.n_trees}, {"min_leaf", cfg.forest.min_leaf}}}};
}

AfsConfig afs_config_from_json(const json& j) {
    AfsConfig cfg;
    if (j.contains("selector")) cfg.selector = selector_from_string(j["selector"].get<std::string>());
    cfg.alpha = j.value("alpha", cfg.alpha);
    if (j.contains("ci")) cfg.ci = ci_kind_from_string(j["ci"].get<std::string>());
    cfg.k_runs = j.value("k_runs", cfg.k_runs);
    cfg.max_k = j.value("max_k", cfg.max_k);
    if (j.contains("forest")) {
        cfg.forest.n_trees = j["forest"].value("n_trees", cfg.forest.n_trees);
        cfg.forest.min_leaf = j["forest"].value("min_leaf", cfg.forest.min_leaf);
    }
    return cfg;
}

json cl_config_to_json(const ClConfig& cfg) {
    json j{{"algorithm", to_string(cfg.algorithm)},
           {"alpha", cfg.alpha},
           {"ci", to_string(cfg.ci)}};
    if (cfg.max_cond_size) j["max_cond_size"] = *cfg.max_cond_size;
    return j;
}

ClConfig cl_config_from_json(const json& j) {
    ClConfig cfg;
    if (j.contains("algorithm"))
        cfg.algorithm = cl_algorithm_from_string(j["algorithm"].get<std::string>());
    cfg.alpha = j.value("alpha", cfg.alpha);
    if (j.contains("ci")) cfg.ci = ci_kind_from_string(j["ci"].get<std::string>());
    if (j.contains("max_cond_size") && !j["max_cond_size"].is_null())
        cfg.max_cond_size = j["max_cond_size"].get<int>();
    return cfg;
}

json afs_result_to_json(const AfsResult& res, const Dataset& d) {
    json names = json::array();
    for (int i : res.mb_est) names.push_back(d.col(i).name);
    json equiv = json::array();
    for (const auto& set : res.equivalent_sets) {
        json one = json::array();
        for (int i : set) one.push_back(d.col(i).name);
        equiv.push_back(std::move(one));
    }
    json j{{"mb_est", std::move(names)},
           {"mb_indices", res.mb_est},
           {"equivalent_sets", std::move(equiv)},
           {"winner", afs_config_to_json(res.winner)},
           {"winner_index", res.winner_index},
           {"cv_score", res.cv_score},
           {"grid_scores", res.grid_scores},
           {"grid_mb_sizes", res.grid_mb_sizes}};
    j["holdout_score"] = res.holdout_score ? json(*res.holdout_score) : json(nullptr);
    return j;
}

json oct_report_to_json(const OctReport& report) {
    json per = json::array();
    for (const OctConfigSummary& s : report.per_config) {
        per.push_back(json{{"config", cl_config_to_json(s.config)},
                           {"mean_score", s.mean_score},
                           {"mean_mb_size", s.mean_mb_size},
                           {"disqualified", s.perf.disqualified},
                           {"fold_errors", s.perf.fold_errors}});
    }
    json indist = json::array();
    for (const auto& [idx, p] : report.indistinguishable)
        indist.push_back(json{{"config", idx}, {"p_value", p}});
    return json{{"per_config", std::move(per)},
                {"best_index", report.best_index},
                {"indistinguishable", std::move(indist)},
                {"winner_index", report.winner_index},
                {"winner", cl_config_to_json(report.winner)},
                {"winner_mb_size", report.winner_graph_mb_size}};
}

json confidences_to_json(const std::vector<EdgeConfidence>& conf, const MixedGraph& g,
                         int n_failed) {
    json edges = json::array();
    for (const EdgeConfidence& ec : conf) {
        edges.push_back(json{{"a", g.node(ec.edge.a).id},
                             {"b", g.node(ec.edge.b).id},
                             {"mark_a", to_string(ec.edge.mark_a)},
                             {"mark_b", to_string(ec.edge.mark_b)},
                             {"marks", edge_marks(ec.edge)},
                             {"exact_freq", ec.exact_freq},
                             {"consistency_freq", ec.consistency_freq},
                             {"n_boot", ec.n_boot}});
    }
    return json{{"edges", std::move(edges)}, {"n_failed", n_failed}};
}

std::vector<EdgeConfidence> confidences_from_json(const json& j, const MixedGraph& g) {
    std::vector<EdgeConfidence> conf;
    for (const json& e : j.at("edges")) {
        EdgeConfidence ec;
        ec.edge.a = g.index_of(e.at("a").get<std::string>());
        ec.edge.b = g.index_of(e.at("b").get<std::string>());
        ec.edge.mark_a = mark_from_string(e.at("mark_a").get<std::string>());
        ec.edge.mark_b = mark_from_string(e.at("mark_b").get<std::string>());
        ec.exact_freq = e.at("exact_freq").get<double>();
        ec.consistency_freq = e.at("consistency_freq").get<double>();
        ec.n_boot = e.value("n_boot", 0);
        conf.push_back(ec);
    }
    return conf;
}

json query_answer_to_json(const QueryAnswer& ans, const MixedGraph& g) {
    json witness = json::array();
    for (int i : ans.witness) witness.push_back(g.node(i).id);
    json j{{"kind", to_string(ans.kind)}, {"answer", ans.answer}, {"witness", std::move(witness)}};
    j["subgraph"] = ans.answer ? graph_to_json(ans.subgraph) : json(nullptr);
    return j;
}

Dataset load_table(const json& cfg) {
    const std::string data = cfg.at("data").get<std::string>();
    const std::string schema = cfg.value("schema", std::string{});
    std::vector<std::string> warnings;
    Dataset d = load_csv(data, schema, &warnings);
    for (const std::string& w : warnings) std::cerr << "autocd: " << w << "\n";
    return d;
}

std::vector<ClConfig> cl_grid_from_config(const json& cfg, const Knowledge& knowledge) {
    std::vector<ClConfig> grid;
    if (cfg.contains("cl_grid")) {
        for (const json& j : cfg["cl_grid"]) {
            ClConfig c = cl_config_from_json(j);
            c.knowledge = knowledge;
            grid.push_back(std::move(c));
        }
        if (grid.empty()) throw std::invalid_argument("cl_grid must not be empty");
        return grid;
    }
    return default_cl_grid(knowledge);
}

std::vector<AfsConfig> afs_grid_from_config(const json& cfg) {
    std::vector<AfsConfig> grid;
    if (cfg.contains("afs_grid")) {
        for (const json& j : cfg["afs_grid"]) grid.push_back(afs_config_from_json(j));
        if (grid.empty()) throw std::invalid_argument("afs_grid must not be empty");
        return grid;
    }
    return default_afs_grid();
}

uint64_t seed_from(const json& cfg, const std::optional<uint64_t>& flag, bool required) {
    if (flag) return *flag;
    if (cfg.contains("seed")) return cfg["seed"].get<uint64_t>();
    if (required)
        throw std::invalid_argument("a seed is required: set \"seed\" in the config or pass --seed");
    return 0;
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path);
    return json::parse(in);
}

int cmd_simulate(const std::string& config_path, const std::optional<uint64_t>& seed_flag,
                 const std::string& out_dir) {
    json cfg = load_config(config_path);
    SimSpec spec = sim_spec_from_json(cfg);
    if (seed_flag) spec.seed = *seed_flag;
    if (spec.n_samples < 1)
        throw std::invalid_argument("simulate: n_samples must be positive");

    const GroundTruth gt = random_lagged_dag(spec);
    const Dataset ts =
        simulate_ts(gt, spec.n_samples, spec.burn_in, Rng::substream(spec.seed, "sim"));

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    save_csv(ts, (dir / "data.csv").string(), (dir / "data.schema.json").string());
    save_json(ground_truth_to_json(gt), (dir / "truth.json").string());
    std::cout << "wrote " << ts.n_rows() << " rows x " << ts.n_cols() << " variables to "
              << (dir / "data.csv").string() << " (target " << gt.target << ")\n";
    return 0;
}

int cmd_afs(const std::string& config_path, const std::optional<uint64_t>& seed_flag,
            const std::string& out_dir) {
    json cfg = load_config(config_path);
    const Dataset d = load_table(cfg);
    const std::string target = cfg.at("target").get<std::string>();
    if (d.find_index(target) < 0)
        throw std::invalid_argument("target column " + target + " not found");

    std::optional<Dataset> test;
    if (cfg.contains("test_data")) {
        json tcfg{{"data", cfg["test_data"]}};
        if (cfg.contains("test_schema")) tcfg["schema"] = cfg["test_schema"];
        test = load_table(tcfg);
    }
    const uint64_t seed = seed_from(cfg, seed_flag, false);
    const AfsResult res = run_afs(d, d.index_of(target), afs_grid_from_config(cfg),
                                  test ? &*test : nullptr, Rng::substream(seed, "afs"));

    fs::create_directories(out_dir);
    save_json(afs_result_to_json(res, d), (fs::path(out_dir) / "afs.json").string());
    std::cout << "selected " << res.mb_est.size() << " of " << d.n_cols() - 1
              << " candidates (cv score " << res.cv_score << ")\n";
    return 0;
}

Knowledge knowledge_from_config(const json& cfg, const Dataset& d) {
    if (cfg.value("tier_knowledge", false)) return tier_knowledge(d);
    if (cfg.contains("knowledge")) return knowledge_from_json(cfg["knowledge"]);
    return {};
}

int cmd_discover(const std::string& config_path, const std::string& out_dir) {
    json cfg = load_config(config_path);
    const Dataset d = load_table(cfg);
    ClConfig cl = cl_config_from_json(cfg);
    cl.knowledge = knowledge_from_config(cfg, d);

    const MixedGraph g = run_discovery(d, cl);
    fs::create_directories(out_dir);
    save_graph(g, (fs::path(out_dir) / "graph.json").string());
    std::cout << to_string(cl.algorithm) << " found " << g.edges().size() << " edges over "
              << g.n() << " nodes\n";
    return 0;
}

int cmd_oct(const std::string& config_path, const std::optional<uint64_t>& seed_flag,
            const std::string& out_dir) {
    json cfg = load_config(config_path);
    const Dataset d = load_table(cfg);
    const std::vector<ClConfig> grid = cl_grid_from_config(cfg, knowledge_from_config(cfg, d));
    const uint64_t seed = seed_from(cfg, seed_flag, false);

    const OctReport report =
        oct_select(d, grid, cfg.value("k", 5), cfg.value("b", 1000), cfg.value("alpha", 0.05),
                   Rng::substream(seed, "oct"));

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    save_json(oct_report_to_json(report), (dir / "oct.json").string());
    save_graph(report.winner_graph, (dir / "winner_graph.json").string());
    std::cout << "winner " << to_string(report.winner.algorithm) << " alpha "
              << report.winner.alpha << " (" << report.winner_graph.edges().size() << " edges)\n";
    return 0;
}

int cmd_bootstrap(const std::string& config_path, const std::optional<uint64_t>& seed_flag,
                  const std::string& out_dir) {
    json cfg = load_config(config_path);
    const Dataset d = load_table(cfg);
    ClConfig cl = cl_config_from_json(cfg.value("config", json::object()));
    cl.knowledge = knowledge_from_config(cfg, d);
    const int n_boot = cfg.value("n_boot", 100);
    std::optional<int> block_len;
    if (cfg.contains("block_len") && !cfg["block_len"].is_null())
        block_len = cfg["block_len"].get<int>();
    const uint64_t seed = seed_from(cfg, seed_flag, false);

    const MixedGraph winner = run_discovery(d, cl);
    const BootstrapResult boot =
        bootstrap_graphs(d, cl, n_boot, block_len, Rng::substream(seed, "bootstrap"));
    std::vector<EdgeConfidence> conf;
    if (!boot.graphs.empty()) conf = edge_confidences(winner, boot.graphs);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    save_graph(winner, (dir / "winner_graph.json").string());
    save_json(confidences_to_json(conf, winner, boot.n_failed),
              (dir / "confidences.json").string());
    std::cout << conf.size() << " edges scored over " << boot.graphs.size()
              << " bootstrap graphs (" << boot.n_failed << " failed)\n";
    return 0;
}

int cmd_query(const std::string& graph_path, const std::string& kind, const std::string& from,
              const std::string& to, const std::string& out_file) {
    const MixedGraph g = load_graph(graph_path);
    const QueryAnswer ans = answer_query(g, query_kind_from_string(kind), from, to);
    const json j = query_answer_to_json(ans, g);
    if (!out_file.empty())
        save_json(j, out_file);
    else
        std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_export(const std::string& graph_path, const std::string& format,
               const std::string& confidences_path, const std::string& target,
               const std::string& out_file) {
    const MixedGraph g = load_graph(graph_path);
    std::vector<EdgeConfidence> conf;
    if (!confidences_path.empty()) conf = confidences_from_json(load_json(confidences_path), g);
    const std::string text = export_graph(g, confidences_path.empty() ? nullptr : &conf,
                                          export_format_from_string(format), target);
    if (!out_file.empty())
        write_text(out_file, text);
    else
        std::cout << text;
    return 0;
}

int cmd_bench(const std::string& config_path, const std::optional<uint64_t>& seed_flag,
              const std::string& out_dir) {
    json cfg = load_config(config_path);
    BenchSpec spec;
    spec.n_vars = cfg.value("n_vars", spec.n_vars);
    spec.max_lag = cfg.value("max_lag", spec.max_lag);
    spec.n_replicates = cfg.value("n_replicates", spec.n_replicates);
    spec.n_train = cfg.value("n_train", spec.n_train);
    spec.n_holdout = cfg.value("n_holdout", spec.n_holdout);
    spec.n_boot = cfg.value("n_boot", spec.n_boot);
    if (cfg.contains("block_len") && !cfg["block_len"].is_null())
        spec.block_len = cfg["block_len"].get<int>();
    spec.seed = seed_from(cfg, seed_flag, false);

    const BenchResult res = run_bench(spec, &std::cerr);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_text(dir / "bench.csv", bench_csv(res));
    json summary{{"mean_mb_precision", res.mean_mb_precision},
                 {"mean_mb_recall", res.mean_mb_recall},
                 {"mean_delta_r2", res.mean_delta_r2},
                 {"mean_adj_precision", res.mean_adj_precision},
                 {"mean_adj_recall", res.mean_adj_recall},
                 {"mean_shd_winner_gap", res.mean_shd_winner_gap},
                 {"mean_shd_random_gap", res.mean_shd_random_gap}};
    summary["mean_auc"] = res.mean_auc ? json(*res.mean_auc) : json(nullptr);
    save_json(summary, (dir / "bench_summary.json").string());
    std::cout << bench_csv(res);
    return 0;
}

int cmd_run(const std::string& config_path, const std::optional<uint64_t>& seed_flag,
            const std::string& out_flag) {
    json cfg = load_config(config_path);
    const uint64_t seed = seed_from(cfg, seed_flag, true);
    cfg["seed"] = seed;
    std::string out_dir = out_flag;
    if (out_dir.empty()) out_dir = cfg.value("out", std::string{});
    if (out_dir.empty())
        throw std::invalid_argument("an output directory is required: set \"out\" or pass --out");

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    Timings timings;
    json manifest{{"command", "run"},
                  {"config", cfg},
                  {"config_hash", hash_hex(cfg.dump())},
                  {"tool", "autocd"},
                  {"version", kVersion}};
    std::vector<std::string> stages;
    std::string current = "load";

    try {
        const Dataset raw = load_table(cfg);
        const std::string target_var = cfg.at("target").get<std::string>();
        const int max_lag = cfg.value("max_lag", 0);
        stages.push_back(current);
        timings.stage(current);

        // lag embedding; with max_lag 0 the table is used as-is
        current = "embed";
        Dataset d = max_lag >= 1 ? lag_embed(raw, max_lag) : raw;
        const std::string target_col = max_lag >= 1 ? target_var + ":0" : target_var;
        if (d.find_index(target_col) < 0)
            throw std::invalid_argument("target column " + target_col + " not found");
        const int target = d.index_of(target_col);
        if (max_lag >= 1)
            save_csv(d, (dir / "embedded.csv").string(), (dir / "embedded.schema.json").string());
        stages.push_back(current);
        timings.stage(current);

        current = "afs";
        const AfsResult afs = run_afs(d, target, afs_grid_from_config(cfg), nullptr,
                                      Rng::substream(seed, "afs"));
        save_json(afs_result_to_json(afs, d), (dir / "afs.json").string());
        stages.push_back(current);
        timings.stage(current);

        // keep the selected features: with lag structure, every lag of every
        // selected variable plus the target's; otherwise the columns as-is
        current = "restrict";
        std::vector<int> keep;
        if (d.has_lag_meta()) {
            std::set<std::string> variables = {d.col(target).variable};
            for (int f : afs.mb_est) variables.insert(d.col(f).variable);
            for (int i = 0; i < d.n_cols(); ++i)
                if (variables.count(d.col(i).variable)) keep.push_back(i);
        } else {
            keep = afs.mb_est;
            if (std::find(keep.begin(), keep.end(), target) == keep.end())
                keep.push_back(target);
            std::sort(keep.begin(), keep.end());
        }
        const Dataset d_cl = d.select_cols(keep);
        const int cl_target = d_cl.index_of(target_col);
        save_csv(d_cl, (dir / "cl_data.csv").string(), (dir / "cl_data.schema.json").string());
        stages.push_back(current);
        timings.stage(current);

        current = "oct";
        const Knowledge knowledge =
            d_cl.has_lag_meta() ? tier_knowledge(d_cl) : knowledge_from_config(cfg, d_cl);
        const json oct_cfg = cfg.value("oct", json::object());
        const OctReport oct =
            oct_select(d_cl, cl_grid_from_config(cfg, knowledge), oct_cfg.value("k", 5),
                       oct_cfg.value("b", 1000), oct_cfg.value("alpha", 0.05),
                       Rng::substream(seed, "oct"));
        save_json(oct_report_to_json(oct), (dir / "oct.json").string());
        save_graph(oct.winner_graph, (dir / "winner_graph.json").string());
        stages.push_back(current);
        timings.stage(current);

        current = "bootstrap";
        const json boot_cfg = cfg.value("bootstrap", json::object());
        std::optional<int> block_len;
        if (boot_cfg.contains("block_len") && !boot_cfg["block_len"].is_null())
            block_len = boot_cfg["block_len"].get<int>();
        const BootstrapResult boot =
            bootstrap_graphs(d_cl, oct.winner, boot_cfg.value("n_boot", 100), block_len,
                             Rng::substream(seed, "bootstrap"));
        std::vector<EdgeConfidence> conf;
        if (!boot.graphs.empty()) conf = edge_confidences(oct.winner_graph, boot.graphs);
        save_json(confidences_to_json(conf, oct.winner_graph, boot.n_failed),
                  (dir / "confidences.json").string());
        stages.push_back(current);
        timings.stage(current);

        current = "export";
        write_text(dir / "winner.graphml",
                   export_graph(oct.winner_graph, &conf, ExportFormat::Graphml, target_col));
        write_text(dir / "winner.cyjs",
                   export_graph(oct.winner_graph, &conf, ExportFormat::CytoscapeJson, target_col));
        write_text(dir / "winner.txt",
                   export_graph(oct.winner_graph, &conf, ExportFormat::DotLikeText, target_col));
        stages.push_back(current);
        timings.stage(current);

        manifest["status"] = "ok";
        manifest["stages"] = stages;
        json summary{{"target", target_col},
                     {"n_selected", afs.mb_est.size()},
                     {"winner", cl_config_to_json(oct.winner)},
                     {"n_edges", oct.winner_graph.edges().size()},
                     {"n_boot_failed", boot.n_failed}};
        manifest["summary"] = std::move(summary);
        save_json(manifest, (dir / "manifest.json").string());
        timings.save(dir / "timings.txt");
        std::cout << "run complete: " << dir.string() << " ("
                  << oct.winner_graph.edges().size() << " edges, "
                  << afs.mb_est.size() << " features)\n";
        return 0;
    } catch (const std::exception& e) {
        manifest["status"] = "failed";
        manifest["stages"] = stages;
        manifest["failed_stage"] = current;
        manifest["error"] = e.what();
        save_json(manifest, (dir / "manifest.json").string());
        timings.save(dir / "timings.txt");
        throw;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"automated causal discovery pipeline"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", out_file, graph_path, kind, from, to;
    std::string format = "graphml", confidences_path, target;
    std::optional<uint64_t> seed;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--seed", seed, "seed override");
        sub->add_option("--out", out_dir, "output directory");
    };

    add_common(app.add_subcommand("simulate", "draw a random lagged SEM and sample it"), true);
    add_common(app.add_subcommand("run", "full pipeline: embed, select, learn, bootstrap, export"),
               true);
    add_common(app.add_subcommand("afs", "feature selection with model-grid scoring"), true);
    add_common(app.add_subcommand("discover", "single causal discovery run"), true);
    add_common(app.add_subcommand("oct", "tune causal configurations out-of-sample"), true);
    add_common(app.add_subcommand("bootstrap", "edge confidences over bootstrap graphs"), true);
    add_common(app.add_subcommand("bench", "synthetic ground-truth benchmark"), true);

    CLI::App* query = app.add_subcommand("query", "ask a path or edge question about a graph");
    query->add_option("--graph", graph_path, "graph JSON file")->required();
    query->add_option("--kind", kind, "edge|directed_path|potentially_directed_path|any_path")
        ->required();
    query->add_option("--from", from, "source node id")->required();
    query->add_option("--to", to, "destination node id")->required();
    query->add_option("--out", out_file, "write the answer JSON here instead of stdout");

    CLI::App* exp = app.add_subcommand("export", "render a graph for external tools");
    exp->add_option("--graph", graph_path, "graph JSON file")->required();
    exp->add_option("--format", format, "graphml|cytoscape_json|dot_like_text");
    exp->add_option("--confidences", confidences_path, "confidences JSON to annotate edges");
    exp->add_option("--target", target, "node id highlighted as the target");
    exp->add_option("--out", out_file, "write here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("simulate")) return cmd_simulate(config_path, seed, out_dir);
        if (app.got_subcommand("run")) return cmd_run(config_path, seed, out_dir == "." ? "" : out_dir);
        if (app.got_subcommand("afs")) return cmd_afs(config_path, seed, out_dir);
        if (app.got_subcommand("discover")) return cmd_discover(config_path, out_dir);
        if (app.got_subcommand("oct")) return cmd_oct(config_path, seed, out_dir);
        if (app.got_subcommand("bootstrap")) return cmd_bootstrap(config_path, seed, out_dir);
        if (app.got_subcommand("bench")) return cmd_bench(config_path, seed, out_dir);
        if (app.got_subcommand("query")) return cmd_query(graph_path, kind, from, to, out_file);
        if (app.got_subcommand("export"))
            return cmd_export(graph_path, format, confidences_path, target, out_file);
    } catch (const std::exception& e) {
        std::cerr << "autocd: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
