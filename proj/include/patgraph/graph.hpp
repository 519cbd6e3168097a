#ifndef PATGRAPH_GRAPH_HPP
#define PATGRAPH_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"

namespace patgraph {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Incidence {
    NodeId node;
    EdgeId edge;
};

struct EdgeEnds {
    NodeId u;  // u < v
    NodeId v;
    friend bool operator==(const EdgeEnds&, const EdgeEnds&) = default;
    friend auto operator<=>(const EdgeEnds&, const EdgeEnds&) = default;
};

/// Undirected simple graph. Each node keeps its incidences sorted by
/// neighbor id; edge ids are dense in insertion order.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adjacency_(n) {}

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    NodeId add_node() {
        adjacency_.emplace_back();
        return static_cast<NodeId>(adjacency_.size() - 1);
    }

    /// Returns the id of the edge {a, b}, inserting it if absent.
    EdgeId add_edge(NodeId a, NodeId b) {
        if (a == b) fail(ErrorCode::InvalidArgument, "self-loops are not allowed");
        if (a >= node_count() || b >= node_count()) fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
        if (auto e = find_edge(a, b)) return *e;
        const auto id = static_cast<EdgeId>(edges_.size());
        edges_.push_back({std::min(a, b), std::max(a, b)});
        insert_sorted(a, {b, id});
        insert_sorted(b, {a, id});
        return id;
    }

    std::optional<EdgeId> find_edge(NodeId a, NodeId b) const {
        if (a >= node_count() || b >= node_count()) return std::nullopt;
        const auto& inc = adjacency_[a];
        auto it = std::lower_bound(inc.begin(), inc.end(), b,
                                   [](const Incidence& x, NodeId key) { return x.node < key; });
        if (it != inc.end() && it->node == b) return it->edge;
        return std::nullopt;
    }

    bool has_edge(NodeId a, NodeId b) const { return find_edge(a, b).has_value(); }

    std::span<const Incidence> incidences(NodeId v) const { return adjacency_[v]; }
    std::size_t degree(NodeId v) const { return adjacency_[v].size(); }
    const EdgeEnds& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<EdgeEnds>& edges() const noexcept { return edges_; }

    static Graph from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) {
        Graph g(n);
        for (auto [a, b] : edges) g.add_edge(a, b);
        return g;
    }

private:
    void insert_sorted(NodeId v, Incidence inc) {
        auto& list = adjacency_[v];
        auto it = std::lower_bound(list.begin(), list.end(), inc.node,
                                   [](const Incidence& x, NodeId key) { return x.node < key; });
        list.insert(it, inc);
    }

    std::vector<std::vector<Incidence>> adjacency_;
    std::vector<EdgeEnds> edges_;
};

/// Degree -> number of nodes with that degree.
inline std::map<std::size_t, std::size_t> degree_histogram(const Graph& g) {
    std::map<std::size_t, std::size_t> hist;
    for (NodeId v = 0; v < g.node_count(); ++v) ++hist[g.degree(v)];
    return hist;
}

struct Components {
    std::vector<std::vector<NodeId>> members;  // each sorted ascending
    std::vector<std::uint32_t> label;          // node -> component index
    std::size_t isolated_count = 0;
};

/// Undirected reachability classes, numbered by smallest member.
inline Components connected_components(const Graph& g) {
    Components c;
    const std::size_t n = g.node_count();
    constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
    c.label.assign(n, unset);
    std::vector<NodeId> queue;
    for (NodeId s = 0; s < n; ++s) {
        if (c.label[s] != unset) continue;
        const auto id = static_cast<std::uint32_t>(c.members.size());
        queue.assign(1, s);
        c.label[s] = id;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (const auto& inc : g.incidences(queue[head])) {
                if (c.label[inc.node] == unset) {
                    c.label[inc.node] = id;
                    queue.push_back(inc.node);
                }
            }
        }
        std::sort(queue.begin(), queue.end());
        if (queue.size() == 1 && g.degree(s) == 0) ++c.isolated_count;
        c.members.push_back(queue);
    }
    return c;
}

} // namespace patgraph

#endif
