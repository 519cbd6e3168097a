#ifndef PATGRAPH_PIPELINE_HPP
#define PATGRAPH_PIPELINE_HPP

#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "community.hpp"
#include "config.hpp"
#include "graph_io.hpp"
#include "institutions.hpp"
#include "recommend.hpp"
#include "report.hpp"

namespace patgraph {

inline constexpr const char* tool_name = "patgraph";
inline constexpr const char* tool_version = "0.1.0";

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open '" + path + "' for reading");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) fail(ErrorCode::Io, "write failed for '" + path + "'");
}

inline void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorCode::Io, "cannot create directory '" + dir + "': " + ec.message());
}

inline std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

/// Provenance written next to every artifact as `<artifact>.meta.json`.
struct ArtifactMeta {
    std::string command;
    std::optional<std::uint64_t> seed;
    std::string config_hash;
    nlohmann::json extra = nlohmann::json::object();
};

inline void write_metadata(const std::string& artifact, const ArtifactMeta& meta) {
    nlohmann::json j = meta.extra;
    j["tool"] = tool_name;
    j["version"] = tool_version;
    j["command"] = meta.command;
    j["seed"] = meta.seed ? nlohmann::json(*meta.seed) : nlohmann::json();
    j["config_hash"] = meta.config_hash;
    write_file(artifact + ".meta.json", j.dump(2) + "\n");
}

inline void write_artifact(const std::string& path, const std::string& content, const ArtifactMeta& meta) {
    write_file(path, content);
    write_metadata(path, meta);
}

// ---- ingest / build -------------------------------------------------------

inline std::vector<PatentRecord> ingest_file(const std::string& path, ParseMode mode, Warnings* warnings) {
    std::istringstream in(read_file(path));
    return load_records(in, mode, warnings);
}

inline std::string records_jsonl(const std::vector<PatentRecord>& records) {
    std::string out;
    for (const auto& r : records) out += to_json(r).dump() + "\n";
    return out;
}

inline std::map<std::string, std::string> load_aliases(const std::string& path) {
    if (path.empty()) return {};
    std::istringstream in(read_file(path));
    return parse_alias_table(in);
}

inline HeteroGraph build_from_records(const std::vector<PatentRecord>& records, const std::string& aliases_path,
                                      ParseMode mode, Warnings* warnings) {
    const auto institutions = resolve_institutions(records, load_aliases(aliases_path));
    return build_graph(records, institutions, mode, warnings);
}

inline std::string nodes_csv(const HeteroGraph& g) {
    std::ostringstream out;
    write_nodes_csv(g, out);
    return out.str();
}

inline std::string edges_csv(const HeteroGraph& g) {
    std::ostringstream out;
    write_edges_csv(g, out);
    return out.str();
}

// ---- communities ----------------------------------------------------------

inline std::string community_csv(const HeteroGraph& g, const Partition& p) {
    std::ostringstream out;
    csv::write_row(out, "key", "community_id");
    for (const auto& n : g.nodes()) csv::write_row(out, n.key, std::to_string(p.assignment[n.id]));
    return out.str();
}

inline nlohmann::json community_summary(const GirvanNewmanResult& r) {
    return {{"community_count", r.best.community_count},
            {"non_singleton_count", r.best.non_singleton_count()},
            {"best_modularity", r.best.modularity},
            {"best_level", r.best_level},
            {"removals", r.dendrogram.removals.size()},
            {"levels", r.dendrogram.levels.size()}};
}

/// Reads `key,community_id` into a key -> label map.
inline std::map<std::string, std::string> read_labels(const std::string& path) {
    std::istringstream in(read_file(path));
    const auto rows = csv::read(in);
    if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "key")
        fail(ErrorCode::MalformedHeader, path + ": expected header 'key,community_id'");
    std::map<std::string, std::string> labels;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() < 2) fail(ErrorCode::MalformedInput, path + ":" + std::to_string(i + 1) + ": expected 2 fields");
        labels[rows[i][0]] = rows[i][1];
    }
    return labels;
}

// ---- embed / project ------------------------------------------------------

/// Graph handed to the trainers: patents and IPCs, plus institutions when
/// requested.
inline HeteroGraph embedding_graph(const HeteroGraph& g, bool include_institutions) {
    std::set<NodeKind> kinds{NodeKind::Patent, NodeKind::Ipc};
    if (include_institutions) kinds.insert(NodeKind::Institution);
    return subgraph_by_kind(g, kinds);
}

inline EmbeddingMatrix embed_graph(const HeteroGraph& g, const PipelineConfig& cfg, std::uint64_t seed) {
    const HeteroGraph sub = embedding_graph(g, cfg.include_institutions);
    std::vector<std::string> keys;
    for (const auto& n : sub.nodes()) keys.push_back(n.key);
    const Graph& topo = sub.topology();
    if (topo.node_count() == 0) fail(ErrorCode::EmptyGraph, "nothing to embed");
    switch (cfg.algo) {
    case EmbedAlgo::DeepWalk: return train_deepwalk(topo, cfg.deepwalk, seed, keys);
    case EmbedAlgo::Node2Vec: return train_node2vec(topo, cfg.node2vec, seed, keys);
    case EmbedAlgo::Line: return train_line(topo, cfg.line, seed, keys);
    case EmbedAlgo::Sdne: return train_sdne(topo, cfg.sdne, seed, keys);
    }
    fail(ErrorCode::InvalidArgument, "unknown embedding algorithm");
}

inline nlohmann::json embedding_meta(const EmbeddingMatrix& e, const PipelineConfig& cfg) {
    nlohmann::json j{{"algo", e.algo()},
                     {"dim", e.dim()},
                     {"rows", e.size()},
                     {"include_institutions", cfg.include_institutions},
                     {"training", "sequential-deterministic"}};
    j["optimizer"] = cfg.algo == EmbedAlgo::Sdne ? "adam" : "sgd-linear-decay";
    return j;
}

inline std::string embeddings_text(const EmbeddingMatrix& e) {
    std::ostringstream out;
    write_embeddings(e, out);
    return out.str();
}

inline std::string projection_csv(const Projection2D& p, const std::map<std::string, std::string>* labels) {
    std::ostringstream out;
    if (labels) csv::write_row(out, "key", "x", "y", "community_id");
    else csv::write_row(out, "key", "x", "y");
    for (std::size_t i = 0; i < p.points.size(); ++i) {
        const std::string x = detail::format_double(p.points[i][0]), y = detail::format_double(p.points[i][1]);
        if (!labels) {
            csv::write_row(out, p.keys[i], x, y);
            continue;
        }
        auto it = labels->find(p.keys[i]);
        csv::write_row(out, p.keys[i], x, y, it == labels->end() ? std::string() : it->second);
    }
    return out.str();
}

// ---- recommend ------------------------------------------------------------

/// First patent with at least one IPC and an embedding row.
inline std::optional<std::string> default_query(const HeteroGraph& g, const EmbeddingMatrix& e) {
    for (const auto& n : g.nodes())
        if (n.kind == NodeKind::Patent && !g.ipc_keys(n.id).empty() && e.find(n.key)) return n.key;
    return std::nullopt;
}

// ---- full pipeline ---------------------------------------------------------

/// ingest -> build -> stats -> communities -> embed -> recommend (and an
/// optional t-SNE projection), all written under cfg.output_dir.
inline void run_pipeline(const PipelineConfig& cfg, Warnings* warnings, std::ostream* log = nullptr) {
    if (cfg.input.empty()) fail(ErrorCode::InvalidArgument, "pipeline needs an input file");
    if (!cfg.seed) fail(ErrorCode::InvalidArgument, "pipeline needs a seed");
    const std::uint64_t seed = *cfg.seed;
    const std::string hash = config_hash(cfg);
    const std::string dir = cfg.output_dir;
    ensure_directory(dir);
    auto path = [&](const char* name) { return (std::filesystem::path(dir) / name).string(); };
    auto meta = [&](const char* command, nlohmann::json extra = nlohmann::json::object()) {
        return ArtifactMeta{command, seed, hash, std::move(extra)};
    };
    auto say = [&](const std::string& msg) {
        if (log) *log << msg << '\n';
    };

    const std::string input_bytes = read_file(cfg.input);
    const nlohmann::json input_meta{{"input_fnv1a", hex64(fnv1a(input_bytes))}};
    std::istringstream input_stream(input_bytes);
    const auto records = load_records(input_stream, cfg.mode, warnings);
    write_artifact(path("records.jsonl"), records_jsonl(records), meta("ingest", input_meta));
    say("ingest: " + std::to_string(records.size()) + " records");

    const HeteroGraph g = build_from_records(records, cfg.aliases, cfg.mode, warnings);
    write_artifact(path("nodes.csv"), nodes_csv(g), meta("build"));
    write_artifact(path("edges.csv"), edges_csv(g), meta("build"));
    say("build: " + std::to_string(g.node_count()) + " nodes, " + std::to_string(g.edge_count()) + " edges");

    const StatsSummary stats = compute_stats(g);
    std::ostringstream table;
    write_stats_table(stats, table);
    write_artifact(path("stats.txt"), table.str(), meta("stats"));
    write_artifact(path("stats.json"), to_json(stats).dump(2) + "\n", meta("stats"));
    std::ostringstream freq;
    write_ipc_frequency_csv(ipc_frequency_table(records), freq);
    write_artifact(path("ipc_frequency.csv"), freq.str(), meta("stats"));
    say("stats: avg_degree " + fixed(stats.avg_degree, 4));

    const auto gn = girvan_newman(g.topology(), {cfg.max_removals, cfg.plateau});
    write_artifact(path("communities.csv"), community_csv(g, gn.best), meta("communities"));
    write_artifact(path("communities.json"), community_summary(gn).dump(2) + "\n", meta("communities"));
    say("communities: " + std::to_string(gn.best.community_count) + " at Q=" + fixed(gn.best.modularity, 6));

    const EmbeddingMatrix e = embed_graph(g, cfg, seed);
    write_artifact(path("embeddings.txt"), embeddings_text(e), meta("embed", embedding_meta(e, cfg)));
    say("embed: " + std::string(to_string(cfg.algo)) + ", " + std::to_string(e.size()) + " rows");

    if (cfg.project) {
        const Projection2D p = tsne(e, cfg.tsne, seed);
        std::map<std::string, std::string> labels;
        for (const auto& n : g.nodes()) labels[n.key] = std::to_string(gn.best.assignment[n.id]);
        write_artifact(path("projection.csv"), projection_csv(p, &labels),
                       meta("project", {{"final_kl", p.final_kl}, {"iterations", p.iterations}}));
        say("project: final KL " + fixed(p.final_kl, 6));
    }

    std::string query = normalize_text(cfg.query);
    if (query.empty()) {
        auto q = default_query(g, e);
        if (!q) fail(ErrorCode::InsufficientData, "no patent with IPC codes to query");
        query = *q;
    }
    const Recommendation rec = recommend(g, e, query, cfg.k);
    write_artifact(path("recommendations.json"), to_json(rec).dump(2) + "\n", meta("recommend"));
    say("recommend: " + std::to_string(rec.neighbors.size()) + " neighbors for " + query);
}

} // namespace patgraph

#endif
