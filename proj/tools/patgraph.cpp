// patgraph: patent-network analysis from structured records to embeddings
// and similar-patent recommendations.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <list>
#include <random>

#include <CLI11.hpp>

#include <patgraph.hpp>

namespace fs = std::filesystem;
using namespace patgraph;

namespace {

/// A CLI flag that overrides one config key. The key may depend on the
/// effective config (e.g. `--dim` maps to `<algo>.dim`).
struct Override {
    std::string flag;
    std::string value;
    std::function<std::string(const PipelineConfig&)> key;
    CLI::Option* option = nullptr;
};

class Command {
public:
    Command(CLI::App& parent, const std::string& name, const std::string& help)
        : app_(parent.add_subcommand(name, help)) {
        app_->add_option("--config", config_path_, "key=value config file; flags override it")
            ->check(CLI::ExistingFile);
    }

    CLI::App* app() { return app_; }
    std::optional<std::uint64_t>& seed() { return seed_; }

    void add_seed() {
        app_->add_option("--seed", seed_, "random seed (required when CI is set)");
        app_->add_flag("--deterministic", deterministic_, "sequential, bit-reproducible training");
    }

    /// Flag bound to a fixed config key.
    void bind(const std::string& flag, const std::string& key, const std::string& help) {
        bind_with(flag, [key](const PipelineConfig&) { return key; }, help);
    }

    /// Flag bound to `<algo>.<suffix>`; rejected for algorithms without it.
    void bind_algo(const std::string& flag, const std::string& suffix, const std::string& help) {
        bind_with(flag, [suffix](const PipelineConfig& c) { return std::string(to_string(c.algo)) + "." + suffix; },
                  help);
    }

    /// Config file, then flags in declaration order.
    PipelineConfig config() const {
        PipelineConfig cfg;
        if (!config_path_.empty()) {
            std::istringstream in(read_file(config_path_));
            read_config(in, cfg, config_path_);
            const fs::path base = fs::path(config_path_).parent_path();
            for (std::string* p : {&cfg.input, &cfg.aliases})
                if (!p->empty() && fs::path(*p).is_relative()) *p = (base / *p).string();
        }
        for (const auto& o : overrides_) {
            if (o.option->count() == 0) continue;
            const std::string key = o.key(cfg);
            if (!detail::config_fields().contains(key))
                fail(ErrorCode::InvalidArgument, o.flag + " does not apply here (no config key '" + key + "')");
            set_config_value(cfg, key, o.value);
        }
        if (deterministic_) cfg.deterministic = true;
        if (seed_) cfg.seed = seed_;
        return cfg;
    }

    /// Effective seed: flag, then config; CI mode forbids falling back to
    /// a fresh random seed.
    std::uint64_t resolve_seed(PipelineConfig& cfg) const {
        if (!cfg.seed) {
            if (std::getenv("CI")) fail(ErrorCode::InvalidArgument, "--seed is required in CI mode");
            cfg.seed = std::random_device{}() | (static_cast<std::uint64_t>(std::random_device{}()) << 32);
            std::cerr << "note: using seed " << *cfg.seed << '\n';
        }
        if (!cfg.deterministic)
            std::cerr << "warning: parallel training is not available; training sequentially\n";
        return *cfg.seed;
    }

private:
    void bind_with(const std::string& flag, std::function<std::string(const PipelineConfig&)> key,
                   const std::string& help) {
        auto& o = overrides_.emplace_back();
        o.flag = flag;
        o.key = std::move(key);
        o.option = app_->add_option(flag, o.value, help);
    }

    CLI::App* app_;
    std::string config_path_;
    std::optional<std::uint64_t> seed_;
    bool deterministic_ = false;
    std::list<Override> overrides_;
};

/// Refuses to overwrite any input.
void guard_outputs(const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
    for (const auto& out : outputs)
        for (const auto& in : inputs) {
            std::error_code ec;
            if (fs::exists(out) && fs::equivalent(in, out, ec))
                fail(ErrorCode::InvalidArgument, "output '" + out + "' would overwrite input '" + in + "'");
        }
}

std::string join_path(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void print_warnings(const Warnings& w) {
    for (const auto& msg : w) std::cerr << "warning: " << msg << '\n';
}

nlohmann::json fingerprint(const std::vector<std::string>& paths) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : paths) j.push_back(hex64(fnv1a(read_file(p))));
    return {{"input_fnv1a", j}};
}

HeteroGraph load_graph_pair(const std::vector<std::string>& pair) { return load_graph(pair.at(0), pair.at(1)); }

int run_ingest(Command& cmd, const std::string& input, const std::string& out) {
    PipelineConfig cfg = cmd.config();
    guard_outputs({input}, {out});
    Warnings warnings;
    const auto records = ingest_file(input, cfg.mode, &warnings);
    print_warnings(warnings);
    write_artifact(out, records_jsonl(records), {"ingest", std::nullopt, config_hash(cfg), fingerprint({input})});
    std::cout << "ingest: " << records.size() << " records\n";
    return 0;
}

int run_build(Command& cmd, const std::string& input, const std::string& dir) {
    PipelineConfig cfg = cmd.config();
    ensure_directory(dir);
    const std::string nodes = join_path(dir, "nodes.csv"), edges = join_path(dir, "edges.csv");
    std::vector<std::string> inputs{input};
    if (!cfg.aliases.empty()) inputs.push_back(cfg.aliases);
    guard_outputs(inputs, {nodes, edges});
    Warnings warnings;
    const auto records = ingest_file(input, cfg.mode, &warnings);
    const auto g = build_from_records(records, cfg.aliases, cfg.mode, &warnings);
    print_warnings(warnings);
    const ArtifactMeta meta{"build", std::nullopt, config_hash(cfg), fingerprint(inputs)};
    write_artifact(nodes, nodes_csv(g), meta);
    write_artifact(edges, edges_csv(g), meta);
    std::cout << "build: " << g.node_count() << " nodes (" << g.count(NodeKind::Patent) << " patents, "
              << g.count(NodeKind::Ipc) << " ipc, " << g.count(NodeKind::Institution) << " institutions), "
              << g.edge_count() << " edges\n";
    return 0;
}

int run_stats(Command& cmd, const std::vector<std::string>& graph, const std::string& json_out,
              const std::string& records_path) {
    PipelineConfig cfg = cmd.config();
    std::vector<std::string> inputs = graph;
    if (!records_path.empty()) inputs.push_back(records_path);
    if (!json_out.empty()) guard_outputs(inputs, {json_out});
    const auto g = load_graph_pair(graph);
    const auto stats = compute_stats(g);
    write_stats_table(stats, std::cout);
    if (!records_path.empty()) {
        Warnings warnings;
        const auto records = ingest_file(records_path, cfg.mode, &warnings);
        print_warnings(warnings);
        std::cout << '\n';
        write_ipc_frequency_csv(ipc_frequency_table(records), std::cout);
    }
    if (!json_out.empty())
        write_artifact(json_out, to_json(stats).dump(2) + "\n", {"stats", std::nullopt, config_hash(cfg), fingerprint(inputs)});
    return 0;
}

int run_centrality(Command& cmd, const std::vector<std::string>& graph, const std::string& metric,
                   const std::string& dir) {
    PipelineConfig cfg = cmd.config();
    std::vector<CentralityMetric> metrics;
    if (metric == "degree" || metric == "all") metrics.push_back(CentralityMetric::Degree);
    if (metric == "betweenness" || metric == "all") metrics.push_back(CentralityMetric::Betweenness);
    if (metric == "pagerank" || metric == "all") metrics.push_back(CentralityMetric::PageRank);
    const auto g = load_graph_pair(graph);
    if (!dir.empty()) ensure_directory(dir);
    for (auto m : metrics) {
        const CentralityReport r = m == CentralityMetric::Degree        ? degree_centrality(g.topology())
                                   : m == CentralityMetric::Betweenness ? betweenness_centrality(g.topology())
                                                                        : pagerank(g.topology());
        std::cout << "# " << to_string(m) << '\n';
        write_centrality_csv(g, r, std::cout, cfg.centrality_top);
        if (!dir.empty()) {
            const std::string out = join_path(dir, "centrality_" + std::string(to_string(m)) + ".csv");
            guard_outputs(graph, {out});
            std::ostringstream full;
            write_centrality_csv(g, r, full);
            write_artifact(out, full.str(), {"centrality", std::nullopt, config_hash(cfg), fingerprint(graph)});
        }
    }
    return 0;
}

int run_communities(Command& cmd, const std::vector<std::string>& graph, const std::string& out) {
    PipelineConfig cfg = cmd.config();
    if (!out.empty()) guard_outputs(graph, {out});
    const auto g = load_graph_pair(graph);
    const auto r = girvan_newman(g.topology(), {cfg.max_removals, cfg.plateau});
    const auto summary = community_summary(r);
    std::cout << summary.dump(2) << '\n';
    if (!out.empty()) {
        auto extra = fingerprint(graph);
        extra["summary"] = summary;
        write_artifact(out, community_csv(g, r.best), {"communities", std::nullopt, config_hash(cfg), extra});
    }
    return 0;
}

int run_embed(Command& cmd, const std::vector<std::string>& graph, const std::string& out) {
    PipelineConfig cfg = cmd.config();
    guard_outputs(graph, {out});
    const std::uint64_t seed = cmd.resolve_seed(cfg);
    const auto g = load_graph_pair(graph);
    const auto e = embed_graph(g, cfg, seed);
    auto extra = embedding_meta(e, cfg);
    extra.update(fingerprint(graph));
    write_artifact(out, embeddings_text(e), {"embed", seed, config_hash(cfg), extra});
    std::cout << "embed: " << to_string(cfg.algo) << ", " << e.size() << " rows, dim " << e.dim() << '\n';
    return 0;
}

int run_project(Command& cmd, const std::string& embeddings, const std::string& labels_path, const std::string& out) {
    PipelineConfig cfg = cmd.config();
    std::vector<std::string> inputs{embeddings};
    if (!labels_path.empty()) inputs.push_back(labels_path);
    guard_outputs(inputs, {out});
    const std::uint64_t seed = cmd.resolve_seed(cfg);
    const auto e = load_embeddings(embeddings);
    std::optional<std::map<std::string, std::string>> labels;
    if (!labels_path.empty()) labels = read_labels(labels_path);
    const auto p = tsne(e, cfg.tsne, seed);
    auto extra = fingerprint(inputs);
    extra["final_kl"] = p.final_kl;
    extra["iterations"] = p.iterations;
    write_artifact(out, projection_csv(p, labels ? &*labels : nullptr), {"project", seed, config_hash(cfg), extra});
    std::cout << "project: " << p.points.size() << " points, final KL " << fixed(p.final_kl, 6) << '\n';
    return 0;
}

int run_recommend(Command& cmd, const std::string& embeddings, const std::vector<std::string>& graph,
                  const std::string& out) {
    PipelineConfig cfg = cmd.config();
    std::vector<std::string> inputs = graph;
    inputs.push_back(embeddings);
    if (!out.empty()) guard_outputs(inputs, {out});
    const auto g = load_graph_pair(graph);
    const auto e = load_embeddings(embeddings);
    const std::string query = normalize_text(cfg.query);
    if (query.empty()) fail(ErrorCode::InvalidArgument, "--query is required");
    const auto rec = recommend(g, e, query, cfg.k);
    print_warnings(rec.warnings);
    const std::string text = to_json(rec).dump(2) + "\n";
    std::cout << text;
    if (!out.empty()) write_artifact(out, text, {"recommend", std::nullopt, config_hash(cfg), fingerprint(inputs)});
    return 0;
}

int run_pipeline_command(Command& cmd, const std::vector<std::string>& sets) {
    PipelineConfig cfg = cmd.config();
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) fail(ErrorCode::InvalidArgument, "--set expects key=value, got '" + kv + "'");
        set_config_value(cfg, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
    }
    cmd.resolve_seed(cfg);
    Warnings warnings;
    run_pipeline(cfg, &warnings, &std::cout);
    print_warnings(warnings);
    return 0;
}

int exit_code(ErrorCategory c) {
    switch (c) {
    case ErrorCategory::Usage: return 2;
    case ErrorCategory::Data: return 3;
    case ErrorCategory::Io: return 4;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Patent-network analysis: graph construction, statistics, communities, embeddings, recommendations",
                 "patgraph"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    std::string input, out, out_dir, json_out, records_path, metric = "all", embeddings, labels;
    std::vector<std::string> graph, sets;

    auto graph_option = [&](Command& c) {
        c.app()->add_option("--graph", graph, "node and edge CSVs: <nodes.csv>,<edges.csv>")
            ->delimiter(',')
            ->expected(2)
            ->required();
    };

    Command ingest(app, "ingest", "normalize raw JSONL patent records");
    ingest.app()->add_option("--input", input, "raw records (JSON Lines)")->required();
    ingest.app()->add_option("--out", out, "normalized records output")->required();
    ingest.bind("--mode", "mode", "strict | lenient");

    Command build(app, "build", "build the patent/IPC/institution graph");
    build.app()->add_option("--input", input, "records (JSON Lines)")->required();
    build.app()->add_option("--out-dir", out_dir, "directory for nodes.csv and edges.csv")->required();
    build.bind("--aliases", "aliases", "institution alias table (TSV)");
    build.bind("--mode", "mode", "strict | lenient");

    Command stats(app, "stats", "graph statistics and degree power-law fit");
    graph_option(stats);
    stats.app()->add_option("--json", json_out, "also write the statistics as JSON");
    stats.app()->add_option("--records", records_path, "records file for the IPC section frequency table");
    stats.bind("--mode", "mode", "strict | lenient (for --records)");

    Command centrality(app, "centrality", "degree, betweenness and PageRank rankings");
    graph_option(centrality);
    centrality.app()
        ->add_option("--metric", metric, "degree | betweenness | pagerank | all")
        ->check(CLI::IsMember({"degree", "betweenness", "pagerank", "all"}));
    centrality.bind("--top", "centrality.top", "rows printed per metric");
    centrality.app()->add_option("--out-dir", out_dir, "write full rankings as centrality_<metric>.csv");

    Command communities(app, "communities", "Girvan-Newman communities");
    graph_option(communities);
    communities.bind("--max-removals", "communities.max_removals", "stop after this many removals (0: all)");
    communities.bind("--plateau", "communities.plateau", "stop after this many levels without improvement");
    communities.app()->add_option("--out", out, "write key,community_id CSV");

    Command embed(app, "embed", "train node embeddings");
    graph_option(embed);
    embed.app()->add_option("--out", out, "embedding file")->required();
    embed.bind("--algo", "embed.algo", "deepwalk | node2vec | line | sdne");
    embed.bind("--include-institutions", "embed.include_institutions", "true | false");
    embed.bind_algo("--dim", "dim", "embedding dimension");
    embed.bind_algo("--walk-length", "walk_length", "walk length");
    embed.bind_algo("--num-walks", "num_walks", "walks per node");
    embed.bind_algo("--window", "window", "skip-gram window");
    embed.bind_algo("--epochs", "epochs", "training epochs");
    embed.bind_algo("--p", "p", "node2vec return parameter");
    embed.bind_algo("--q", "q", "node2vec in-out parameter");
    embed.bind_algo("--order", "order", "LINE order: 1 | 2 | concat");
    embed.bind_algo("--batch-size", "batch_size", "LINE/SDNE batch size");
    embed.bind_algo("--learning-rate", "learning_rate", "initial learning rate");
    embed.add_seed();

    Command project(app, "project", "t-SNE projection of embeddings to 2-D");
    project.app()->add_option("--embeddings", embeddings, "embedding file")->required();
    project.app()->add_option("--out", out, "CSV key,x,y[,community_id]")->required();
    project.app()->add_option("--labels", labels, "key,community_id CSV to join");
    project.bind("--perplexity", "tsne.perplexity", "target perplexity");
    project.bind("--iterations", "tsne.iterations", "gradient steps");
    project.bind("--learning-rate", "tsne.learning_rate", "step size");
    project.add_seed();

    Command recommend_cmd(app, "recommend", "similar patents for a query");
    recommend_cmd.app()->add_option("--embeddings", embeddings, "embedding file")->required();
    graph_option(recommend_cmd);
    recommend_cmd.bind("--query", "recommend.query", "patent registration id");
    recommend_cmd.bind("--k", "recommend.k", "number of neighbors");
    recommend_cmd.app()->add_option("--out", out, "also write the JSON result");

    Command pipeline(app, "pipeline", "ingest, build, stats, communities, embed and recommend in one run");
    pipeline.bind("--input", "input", "raw records (JSON Lines)");
    pipeline.bind("--output-dir", "output_dir", "output directory");
    pipeline.app()->add_option("--set", sets, "extra key=value config overrides");
    pipeline.add_seed();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: UsageError: InvalidArgument: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*ingest.app()) return run_ingest(ingest, input, out);
        if (*build.app()) return run_build(build, input, out_dir);
        if (*stats.app()) return run_stats(stats, graph, json_out, records_path);
        if (*centrality.app()) return run_centrality(centrality, graph, metric, out_dir);
        if (*communities.app()) return run_communities(communities, graph, out);
        if (*embed.app()) return run_embed(embed, graph, out);
        if (*project.app()) return run_project(project, embeddings, labels, out);
        if (*recommend_cmd.app()) return run_recommend(recommend_cmd, embeddings, graph, out);
        if (*pipeline.app()) return run_pipeline_command(pipeline, sets);
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.category()) << ": " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_code(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: InternalError: Unexpected: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
