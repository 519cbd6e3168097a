#ifndef PATGRAPH_REPORT_HPP
#define PATGRAPH_REPORT_HPP

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "analytics.hpp"
#include "csv.hpp"
#include "embedding.hpp"
#include "hetero_graph.hpp"

namespace patgraph {

struct StatsSummary {
    std::size_t n = 0, m = 0;
    std::size_t patents = 0, ipcs = 0, institutions = 0;
    double avg_degree = 0.0;
    std::optional<double> avg_path_length;
    std::size_t isolated = 0;
    std::size_t components = 0;
    std::optional<PowerLawFit> powerlaw;
    std::vector<std::string> notes;
};

/// Reference figures for the gazette graph, kept for the average-degree check.
inline constexpr std::size_t reference_nodes = 6443;
inline constexpr std::size_t reference_edges = 8928;
inline constexpr double reference_avg_degree = 2.07;

inline std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

inline std::string avg_degree_note() {
    const double expected = 2.0 * static_cast<double>(reference_edges) / static_cast<double>(reference_nodes);
    return "avg_degree is 2m/n; the reported " + fixed(reference_avg_degree, 2) + " for n=" +
           std::to_string(reference_nodes) + ", m=" + std::to_string(reference_edges) +
           " is inconsistent with 2m/n = " + fixed(expected, 4);
}

inline StatsSummary compute_stats(const Graph& g) {
    StatsSummary s;
    s.n = g.node_count();
    s.m = g.edge_count();
    s.avg_degree = average_degree(g);
    try {
        s.avg_path_length = average_path_length(g);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoConnectedPairs) throw;
        s.notes.push_back("avg_path_length undefined: no connected pairs");
    }
    const auto comps = connected_components(g);
    s.isolated = comps.isolated_count;
    s.components = comps.members.size();
    try {
        s.powerlaw = fit_power_law(degree_histogram(g));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InsufficientData && e.code() != ErrorCode::DegenerateDistribution) throw;
        s.notes.push_back(std::string("powerlaw fit skipped: ") + e.what());
    }
    s.notes.push_back(avg_degree_note());
    return s;
}

inline StatsSummary compute_stats(const HeteroGraph& g) {
    StatsSummary s = compute_stats(g.topology());
    for (const auto& node : g.nodes()) {
        if (node.kind == NodeKind::Patent) ++s.patents;
        else if (node.kind == NodeKind::Ipc) ++s.ipcs;
        else ++s.institutions;
    }
    return s;
}

inline nlohmann::json to_json(const StatsSummary& s) {
    nlohmann::json j;
    j["n"] = s.n;
    j["m"] = s.m;
    j["avg_degree"] = s.avg_degree;
    j["avg_path_length"] = s.avg_path_length ? nlohmann::json(*s.avg_path_length) : nlohmann::json();
    j["isolated"] = s.isolated;
    j["powerlaw_alpha"] = s.powerlaw ? nlohmann::json(s.powerlaw->alpha) : nlohmann::json();
    j["components"] = s.components;
    j["kinds"] = {{"patent", s.patents}, {"ipc", s.ipcs}, {"institution", s.institutions}};
    if (s.powerlaw) {
        j["powerlaw_xmin"] = s.powerlaw->xmin;
        j["powerlaw_ks"] = s.powerlaw->ks_distance;
    }
    j["notes"] = s.notes;
    return j;
}

inline void write_stats_table(const StatsSummary& s, std::ostream& out) {
    auto row = [&](const std::string& k, const std::string& v) {
        out << k << std::string(k.size() < 18 ? 18 - k.size() : 1, ' ') << v << '\n';
    };
    row("nodes", std::to_string(s.n));
    row("  patent", std::to_string(s.patents));
    row("  ipc", std::to_string(s.ipcs));
    row("  institution", std::to_string(s.institutions));
    row("edges", std::to_string(s.m));
    row("avg_degree", fixed(s.avg_degree, 4));
    row("avg_path_length", s.avg_path_length ? fixed(*s.avg_path_length, 4) : "n/a");
    row("components", std::to_string(s.components));
    row("isolated", std::to_string(s.isolated));
    if (s.powerlaw) {
        row("powerlaw_alpha", fixed(s.powerlaw->alpha, 4));
        row("powerlaw_xmin", std::to_string(s.powerlaw->xmin));
        row("powerlaw_ks", fixed(s.powerlaw->ks_distance, 4));
    } else {
        row("powerlaw_alpha", "n/a");
    }
    for (const auto& note : s.notes) out << "note: " << note << '\n';
}

/// CSV `key,kind,score`, highest score first.
inline void write_centrality_csv(const HeteroGraph& g, const CentralityReport& r, std::ostream& out,
                                 std::size_t limit = 0) {
    csv::write_row(out, "key", "kind", "score");
    for (auto [v, score] : r.top_k(limit ? limit : r.scores.size()))
        csv::write_row(out, g.node(v).key, to_string(g.node(v).kind), detail::format_double(score));
}

inline void write_ipc_frequency_csv(const std::vector<IpcFrequency>& table, std::ostream& out) {
    csv::write_row(out, "section", "count", "percentage");
    for (const auto& f : table) csv::write_row(out, f.section, std::to_string(f.count), fixed(f.percentage, 2));
}

} // namespace patgraph

#endif
