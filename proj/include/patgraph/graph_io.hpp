#ifndef PATGRAPH_GRAPH_IO_HPP
#define PATGRAPH_GRAPH_IO_HPP

#include <charconv>
#include <string>

#include "csv.hpp"
#include "hetero_graph.hpp"

namespace patgraph {

inline void write_nodes_csv(const HeteroGraph& g, std::ostream& out) {
    csv::write_row(out, "id", "kind", "key");
    for (const auto& n : g.nodes()) csv::write_row(out, std::to_string(n.id), to_string(n.kind), n.key);
}

inline void write_edges_csv(const HeteroGraph& g, std::ostream& out) {
    csv::write_row(out, "src", "dst", "kind");
    const auto& edges = g.topology().edges();
    for (EdgeId e = 0; e < edges.size(); ++e)
        csv::write_row(out, std::to_string(edges[e].u), std::to_string(edges[e].v), to_string(g.edge_kind(e)));
}

/// Writes `id,kind,key` and `src,dst,kind` CSV files.
inline void export_graph(const HeteroGraph& g, const std::string& node_path, const std::string& edge_path) {
    {
        auto out = csv::open_out(node_path);
        write_nodes_csv(g, out);
        if (!out) fail(ErrorCode::Io, "write failed for '" + node_path + "'");
    }
    auto out = csv::open_out(edge_path);
    write_edges_csv(g, out);
    if (!out) fail(ErrorCode::Io, "write failed for '" + edge_path + "'");
}

namespace detail {

inline NodeId parse_id(const std::string& s, const std::string& where) {
    NodeId v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(ErrorCode::MalformedInput, where + ": bad node id '" + s + "'");
    return v;
}

} // namespace detail

inline HeteroGraph read_graph_csv(std::istream& nodes_in, std::istream& edges_in,
                                  const std::string& node_name = "nodes", const std::string& edge_name = "edges") {
    HeteroGraph g;
    auto node_rows = csv::read(nodes_in);
    if (node_rows.empty() || node_rows[0] != std::vector<std::string>{"id", "kind", "key"})
        fail(ErrorCode::MalformedHeader, node_name + ": expected header 'id,kind,key'");
    for (std::size_t i = 1; i < node_rows.size(); ++i) {
        const auto& row = node_rows[i];
        const std::string where = node_name + ":" + std::to_string(i + 1);
        if (row.size() != 3) fail(ErrorCode::MalformedInput, where + ": expected 3 fields");
        const NodeId id = detail::parse_id(row[0], where);
        if (id != i - 1) fail(ErrorCode::MalformedInput, where + ": node ids must be dense and ordered");
        const NodeKind kind = parse_node_kind(row[1]);
        if (g.find(kind, row[2])) fail(ErrorCode::DuplicateKey, where + ": duplicate node '" + row[2] + "'");
        g.add_node(kind, row[2]);
    }
    auto edge_rows = csv::read(edges_in);
    if (edge_rows.empty() || edge_rows[0] != std::vector<std::string>{"src", "dst", "kind"})
        fail(ErrorCode::MalformedHeader, edge_name + ": expected header 'src,dst,kind'");
    for (std::size_t i = 1; i < edge_rows.size(); ++i) {
        const auto& row = edge_rows[i];
        const std::string where = edge_name + ":" + std::to_string(i + 1);
        if (row.size() != 3) fail(ErrorCode::MalformedInput, where + ": expected 3 fields");
        const NodeId a = detail::parse_id(row[0], where);
        const NodeId b = detail::parse_id(row[1], where);
        if (a >= g.node_count() || b >= g.node_count())
            fail(ErrorCode::MalformedInput, where + ": edge endpoint out of range");
        const EdgeKind declared = parse_edge_kind(row[2]);
        if (!g.add_edge(a, b)) fail(ErrorCode::MalformedInput, where + ": duplicate edge");
        if (g.edge_kind(static_cast<EdgeId>(g.edge_count() - 1)) != declared)
            fail(ErrorCode::KindMismatch, where + ": edge kind does not match endpoint kinds");
    }
    return g;
}

inline HeteroGraph load_graph(const std::string& node_path, const std::string& edge_path) {
    auto nodes_in = csv::open_in(node_path);
    auto edges_in = csv::open_in(edge_path);
    return read_graph_csv(nodes_in, edges_in, node_path, edge_path);
}

} // namespace patgraph

#endif
