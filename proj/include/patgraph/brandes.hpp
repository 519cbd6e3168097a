#ifndef PATGRAPH_BRANDES_HPP
#define PATGRAPH_BRANDES_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "graph.hpp"
#include "parallel.hpp"

namespace patgraph {

/// Anything exposing node_count() and incidences(v) over Incidence.
template <class A>
concept Adjacency = requires(const A& a, NodeId v) {
    { a.node_count() } -> std::convertible_to<std::size_t>;
    a.incidences(v);
};

namespace detail {

struct BrandesWorkspace {
    static constexpr std::uint32_t unseen = std::numeric_limits<std::uint32_t>::max();

    explicit BrandesWorkspace(std::size_t n) : dist(n, unseen), sigma(n, 0.0), delta(n, 0.0) {
        order.reserve(n);
    }

    std::vector<std::uint32_t> dist;
    std::vector<double> sigma;
    std::vector<double> delta;
    std::vector<NodeId> order;
};

/// One Brandes single-source pass: shortest-path counting by BFS, then
/// dependency accumulation in reverse BFS order. Adds ordered-pair
/// contributions (s, t) into node_acc / edge_acc when non-empty.
template <Adjacency A>
void brandes_single_source(const A& adj, NodeId s, BrandesWorkspace& ws, std::span<double> node_acc,
                           std::span<double> edge_acc) {
    ws.order.clear();
    ws.dist[s] = 0;
    ws.sigma[s] = 1.0;
    ws.order.push_back(s);
    for (std::size_t head = 0; head < ws.order.size(); ++head) {
        const NodeId v = ws.order[head];
        for (const auto& inc : adj.incidences(v)) {
            const NodeId w = inc.node;
            if (ws.dist[w] == BrandesWorkspace::unseen) {
                ws.dist[w] = ws.dist[v] + 1;
                ws.order.push_back(w);
            }
            if (ws.dist[w] == ws.dist[v] + 1) ws.sigma[w] += ws.sigma[v];
        }
    }
    for (std::size_t i = ws.order.size(); i-- > 0;) {
        const NodeId w = ws.order[i];
        const double coeff = (1.0 + ws.delta[w]) / ws.sigma[w];
        if (ws.dist[w] > 0) {
            for (const auto& inc : adj.incidences(w)) {
                const NodeId v = inc.node;
                if (ws.dist[v] + 1 != ws.dist[w]) continue;
                const double c = ws.sigma[v] * coeff;
                if (!edge_acc.empty()) edge_acc[inc.edge] += c;
                ws.delta[v] += c;
            }
        }
        if (w != s && !node_acc.empty()) node_acc[w] += ws.delta[w];
    }
    for (NodeId v : ws.order) {
        ws.dist[v] = BrandesWorkspace::unseen;
        ws.sigma[v] = 0.0;
        ws.delta[v] = 0.0;
    }
}

/// Fixed chunk count for source-parallel sweeps; reduction order depends
/// only on this, never on the worker count.
inline constexpr std::size_t brandes_chunks = 16;

} // namespace detail

/// Unnormalized undirected betweenness restricted to paths starting at
/// `sources` (each unordered pair counted once when all of its nodes are
/// sources). Results are added to node_out / edge_out (sized by the node and
/// edge id spaces); pass an empty span to skip one of them.
template <Adjacency A>
void accumulate_betweenness(const A& adj, std::span<const NodeId> sources, std::span<double> node_out,
                            std::span<double> edge_out) {
    const std::size_t n = adj.node_count();
    const std::size_t chunks = std::min(detail::brandes_chunks, std::max<std::size_t>(1, sources.size()));
    std::vector<std::vector<double>> node_part(chunks), edge_part(chunks);
    for_each_chunk(sources.size(), chunks, [&](std::size_t c, std::size_t b, std::size_t e) {
        detail::BrandesWorkspace ws(n);
        if (!node_out.empty()) node_part[c].assign(node_out.size(), 0.0);
        if (!edge_out.empty()) edge_part[c].assign(edge_out.size(), 0.0);
        for (std::size_t i = b; i < e; ++i)
            detail::brandes_single_source(adj, sources[i], ws, node_part[c], edge_part[c]);
    });
    for (std::size_t c = 0; c < chunks; ++c) {
        for (std::size_t i = 0; i < node_part[c].size(); ++i) node_out[i] += 0.5 * node_part[c][i];
        for (std::size_t i = 0; i < edge_part[c].size(); ++i) edge_out[i] += 0.5 * edge_part[c][i];
    }
}

/// Node betweenness over all sources, undirected, unnormalized.
inline std::vector<double> node_betweenness(const Graph& g) {
    std::vector<NodeId> sources(g.node_count());
    for (NodeId v = 0; v < sources.size(); ++v) sources[v] = v;
    std::vector<double> out(g.node_count(), 0.0);
    accumulate_betweenness(g, std::span<const NodeId>(sources), std::span<double>(out), std::span<double>());
    return out;
}

/// Edge betweenness indexed by edge id, undirected, unnormalized.
inline std::vector<double> edge_betweenness(const Graph& g) {
    std::vector<NodeId> sources(g.node_count());
    for (NodeId v = 0; v < sources.size(); ++v) sources[v] = v;
    std::vector<double> out(g.edge_count(), 0.0);
    accumulate_betweenness(g, std::span<const NodeId>(sources), std::span<double>(), std::span<double>(out));
    return out;
}

} // namespace patgraph

#endif
