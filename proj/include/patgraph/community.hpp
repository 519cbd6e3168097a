#ifndef PATGRAPH_COMMUNITY_HPP
#define PATGRAPH_COMMUNITY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "brandes.hpp"
#include "error.hpp"
#include "graph.hpp"

namespace patgraph {

struct Partition {
    std::vector<std::uint32_t> assignment;  // node -> community, dense ids
    std::size_t community_count = 0;
    double modularity = 0.0;

    /// Communities with more than one member.
    std::size_t non_singleton_count() const {
        std::vector<std::size_t> size(community_count, 0);
        for (auto c : assignment) ++size[c];
        return static_cast<std::size_t>(std::count_if(size.begin(), size.end(), [](auto s) { return s > 1; }));
    }
};

/// Relabels arbitrary labels to dense ids in first-appearance order.
inline Partition make_partition(std::span<const std::uint32_t> labels) {
    Partition p;
    p.assignment.resize(labels.size());
    std::map<std::uint32_t, std::uint32_t> dense;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = dense.emplace(labels[i], static_cast<std::uint32_t>(dense.size()));
        p.assignment[i] = it->second;
    }
    p.community_count = dense.size();
    return p;
}

/// Newman modularity  Q = sum_c [ L_c / m - (D_c / 2m)^2 ].
inline double modularity(const Graph& g, std::span<const std::uint32_t> assignment) {
    const std::size_t n = g.node_count();
    if (assignment.size() != n)
        fail(ErrorCode::UncoveredNode, "partition covers " + std::to_string(assignment.size()) + " of " +
                                           std::to_string(n) + " nodes");
    if (g.edge_count() == 0) fail(ErrorCode::EmptyGraph, "modularity is undefined without edges");
    std::uint32_t k = 0;
    for (auto c : assignment) k = std::max(k, c + 1);
    std::vector<double> intra(k, 0.0), degree(k, 0.0);
    for (const auto& e : g.edges())
        if (assignment[e.u] == assignment[e.v]) intra[assignment[e.u]] += 1.0;
    for (NodeId v = 0; v < n; ++v) degree[assignment[v]] += static_cast<double>(g.degree(v));
    const double m = static_cast<double>(g.edge_count());
    double q = 0.0;
    for (std::uint32_t c = 0; c < k; ++c) {
        const double a = degree[c] / (2.0 * m);
        q += intra[c] / m - a * a;
    }
    return q;
}

inline double modularity(const Graph& g, const Partition& p) { return modularity(g, p.assignment); }

struct GirvanNewmanOptions {
    std::size_t max_removals = 0;           // 0: run until no edges remain
    std::optional<std::size_t> plateau;     // stop after this many splits without a better Q
};

struct DendrogramLevel {
    std::optional<EdgeEnds> removed_edge;   // empty for the starting partition
    std::size_t removals = 0;               // edges removed so far
    std::size_t community_count = 0;
    double modularity = 0.0;
};

struct Dendrogram {
    std::vector<EdgeEnds> removals;
    std::vector<DendrogramLevel> levels;

    /// Rebuilds the component partition recorded at `level`.
    Partition partition_at(const Graph& g, std::size_t level) const {
        std::vector<bool> removed(g.edge_count(), false);
        for (std::size_t i = 0; i < levels.at(level).removals; ++i)
            removed[*g.find_edge(removals[i].u, removals[i].v)] = true;
        Graph h(g.node_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            if (!removed[e]) h.add_edge(g.edge(e).u, g.edge(e).v);
        auto comps = connected_components(h);
        Partition p = make_partition(comps.label);
        p.modularity = modularity(g, p);
        return p;
    }
};

struct GirvanNewmanResult {
    Dendrogram dendrogram;
    Partition best;
    std::size_t best_level = 0;
};

/// Girvan-Newman engine over a shrinking copy of the graph. Edge
/// betweenness is kept current by recomputing only the component(s) that
/// contained the removed edge.
class GirvanNewman {
public:
    explicit GirvanNewman(const Graph& g)
        : original_(g), adjacency_(g.node_count()), alive_(g.edge_count(), true),
          betweenness_(g.edge_count(), 0.0), label_(g.node_count(), 0), remaining_(g.edge_count()) {
        for (NodeId v = 0; v < g.node_count(); ++v) {
            auto inc = g.incidences(v);
            adjacency_[v].assign(inc.begin(), inc.end());
        }
        std::vector<NodeId> all(g.node_count());
        for (NodeId v = 0; v < all.size(); ++v) all[v] = v;
        accumulate_betweenness(*this, std::span<const NodeId>(all), std::span<double>(),
                               std::span<double>(betweenness_));
        auto comps = connected_components(g);
        label_ = comps.label;
        component_count_ = comps.members.size();
    }

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::span<const Incidence> incidences(NodeId v) const { return adjacency_[v]; }

    std::size_t remaining_edges() const noexcept { return remaining_; }
    std::size_t component_count() const noexcept { return component_count_; }
    std::span<const std::uint32_t> component_labels() const noexcept { return label_; }
    bool alive(EdgeId e) const { return alive_[e]; }

    /// Current betweenness of a live edge (ids of the original graph).
    double betweenness(EdgeId e) const { return betweenness_[e]; }

    /// Live edge with maximal betweenness; near-equal values (relative 1e-12)
    /// resolve to the smallest (u, v) pair.
    EdgeId select_edge() const {
        double best = -1.0;
        for (EdgeId e = 0; e < alive_.size(); ++e)
            if (alive_[e]) best = std::max(best, betweenness_[e]);
        const double slack = 1e-12 * std::max(1.0, best);
        std::optional<EdgeId> pick;
        for (EdgeId e = 0; e < alive_.size(); ++e) {
            if (!alive_[e] || betweenness_[e] < best - slack) continue;
            if (!pick || original_.edge(e) < original_.edge(*pick)) pick = e;
        }
        return *pick;
    }

    /// Removes the highest-betweenness edge. Returns true if it split a
    /// component.
    bool step(EdgeId* removed = nullptr) {
        if (remaining_ == 0) fail(ErrorCode::EmptyGraph, "no edges left to remove");
        const EdgeId e = select_edge();
        if (removed) *removed = e;
        const auto [u, v] = original_.edge(e);
        erase_incidence(u, e);
        erase_incidence(v, e);
        alive_[e] = false;
        betweenness_[e] = 0.0;
        --remaining_;

        std::vector<NodeId> side_u = reach(u);
        const bool split = std::find(side_u.begin(), side_u.end(), v) == side_u.end();
        std::vector<NodeId> sources = side_u;
        if (split) {
            std::vector<NodeId> side_v = reach(v);
            const auto fresh = static_cast<std::uint32_t>(component_count_++);
            for (NodeId x : side_v) label_[x] = fresh;
            sources.insert(sources.end(), side_v.begin(), side_v.end());
        }
        std::sort(sources.begin(), sources.end());
        for (NodeId x : sources)
            for (const auto& inc : adjacency_[x]) betweenness_[inc.edge] = 0.0;
        accumulate_betweenness(*this, std::span<const NodeId>(sources), std::span<double>(),
                               std::span<double>(betweenness_));
        return split;
    }

    /// Graph of the edges still present (fresh edge ids).
    Graph current_graph() const {
        Graph h(original_.node_count());
        for (EdgeId e = 0; e < alive_.size(); ++e)
            if (alive_[e]) h.add_edge(original_.edge(e).u, original_.edge(e).v);
        return h;
    }

private:
    void erase_incidence(NodeId v, EdgeId e) {
        auto& list = adjacency_[v];
        list.erase(std::find_if(list.begin(), list.end(), [e](const Incidence& i) { return i.edge == e; }));
    }

    std::vector<NodeId> reach(NodeId s) const {
        std::vector<NodeId> seen{s};
        std::vector<bool> mark(adjacency_.size(), false);
        mark[s] = true;
        for (std::size_t head = 0; head < seen.size(); ++head)
            for (const auto& inc : adjacency_[seen[head]])
                if (!mark[inc.node]) {
                    mark[inc.node] = true;
                    seen.push_back(inc.node);
                }
        return seen;
    }

    const Graph& original_;
    std::vector<std::vector<Incidence>> adjacency_;
    std::vector<bool> alive_;
    std::vector<double> betweenness_;
    std::vector<std::uint32_t> label_;
    std::size_t component_count_ = 0;
    std::size_t remaining_ = 0;
};

/// Divisive community detection: repeatedly drop the highest-betweenness
/// edge, record the component partition each time the component count
/// grows, and keep the partition with the largest modularity against the
/// original graph. Isolated nodes are singleton communities throughout.
inline GirvanNewmanResult girvan_newman(const Graph& g, const GirvanNewmanOptions& opt = {}) {
    GirvanNewmanResult result;
    GirvanNewman engine(g);

    auto record = [&](std::optional<EdgeEnds> removed) {
        Partition p = make_partition(engine.component_labels());
        p.modularity = modularity(g, p);
        result.dendrogram.levels.push_back(
            {removed, result.dendrogram.removals.size(), p.community_count, p.modularity});
        if (result.dendrogram.levels.size() == 1 || p.modularity > result.best.modularity) {
            result.best = std::move(p);
            result.best_level = result.dendrogram.levels.size() - 1;
            return true;
        }
        return false;
    };

    record(std::nullopt);
    std::size_t stale = 0;
    while (engine.remaining_edges() > 0 && (opt.max_removals == 0 || result.dendrogram.removals.size() < opt.max_removals)) {
        EdgeId e = 0;
        const bool split = engine.step(&e);
        result.dendrogram.removals.push_back(g.edge(e));
        if (!split) continue;
        if (record(g.edge(e))) stale = 0;
        else if (opt.plateau && ++stale >= *opt.plateau) break;
    }
    return result;
}

} // namespace patgraph

#endif
