#ifndef PATGRAPH_HETERO_GRAPH_HPP
#define PATGRAPH_HETERO_GRAPH_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "record.hpp"

namespace patgraph {

enum class NodeKind : std::uint8_t { Patent, Ipc, Institution };
enum class EdgeKind : std::uint8_t { ClassifiedAs, SupportedBy };

inline std::string_view to_string(NodeKind k) {
    switch (k) {
    case NodeKind::Patent: return "patent";
    case NodeKind::Ipc: return "ipc";
    case NodeKind::Institution: return "institution";
    }
    return "?";
}

inline std::string_view to_string(EdgeKind k) {
    return k == EdgeKind::ClassifiedAs ? "classified_as" : "supported_by";
}

inline NodeKind parse_node_kind(std::string_view s) {
    if (s == "patent") return NodeKind::Patent;
    if (s == "ipc") return NodeKind::Ipc;
    if (s == "institution") return NodeKind::Institution;
    fail(ErrorCode::MalformedInput, "unknown node kind '" + std::string(s) + "'");
}

inline EdgeKind parse_edge_kind(std::string_view s) {
    if (s == "classified_as") return EdgeKind::ClassifiedAs;
    if (s == "supported_by") return EdgeKind::SupportedBy;
    fail(ErrorCode::MalformedInput, "unknown edge kind '" + std::string(s) + "'");
}

struct NodeRef {
    NodeId id;
    NodeKind kind;
    std::string key;
};

/// Undirected tripartite patent / IPC subclass / institution graph. Only
/// Patent-Ipc (ClassifiedAs) and Patent-Institution (SupportedBy) edges exist.
class HeteroGraph {
public:
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return topology_.edge_count(); }

    const Graph& topology() const noexcept { return topology_; }
    const NodeRef& node(NodeId id) const { return nodes_[id]; }
    const std::vector<NodeRef>& nodes() const noexcept { return nodes_; }
    EdgeKind edge_kind(EdgeId e) const { return edge_kinds_[e]; }

    std::size_t count(NodeKind kind) const {
        return static_cast<std::size_t>(
            std::count_if(nodes_.begin(), nodes_.end(), [kind](const NodeRef& n) { return n.kind == kind; }));
    }

    std::optional<NodeId> find(NodeKind kind, std::string_view key) const {
        auto it = index_.find({kind, std::string(key)});
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Looks a key up across kinds, preferring Patent, then Ipc, then Institution.
    std::optional<NodeId> find_any(std::string_view key) const {
        for (auto k : {NodeKind::Patent, NodeKind::Ipc, NodeKind::Institution})
            if (auto id = find(k, key)) return id;
        return std::nullopt;
    }

    /// Returns the existing id for (kind, key) or appends a new node.
    NodeId add_node(NodeKind kind, std::string key) {
        if (auto id = find(kind, key)) return *id;
        const NodeId id = topology_.add_node();
        index_.emplace(std::pair{kind, key}, id);
        nodes_.push_back({id, kind, std::move(key)});
        return id;
    }

    /// Adds the edge with the kind implied by its endpoints; returns false if
    /// it was already present.
    bool add_edge(NodeId a, NodeId b) {
        const EdgeKind kind = edge_kind_for(a, b);
        const std::size_t before = topology_.edge_count();
        topology_.add_edge(a, b);
        if (topology_.edge_count() == before) return false;
        edge_kinds_.push_back(kind);
        return true;
    }

    /// Ipc neighbors of a node, as subclass keys in ascending key order.
    std::vector<std::string> ipc_keys(NodeId v) const {
        std::vector<std::string> out;
        for (const auto& inc : topology_.incidences(v))
            if (nodes_[inc.node].kind == NodeKind::Ipc) out.push_back(nodes_[inc.node].key);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    EdgeKind edge_kind_for(NodeId a, NodeId b) const {
        if (a >= nodes_.size() || b >= nodes_.size()) fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
        NodeKind ka = nodes_[a].kind, kb = nodes_[b].kind;
        if (ka != NodeKind::Patent) std::swap(ka, kb);
        if (ka == NodeKind::Patent && kb == NodeKind::Ipc) return EdgeKind::ClassifiedAs;
        if (ka == NodeKind::Patent && kb == NodeKind::Institution) return EdgeKind::SupportedBy;
        fail(ErrorCode::KindMismatch, "edge " + nodes_[a].key + " -- " + nodes_[b].key +
                                          " violates the patent/ipc/institution schema");
    }

    Graph topology_;
    std::vector<NodeRef> nodes_;
    std::vector<EdgeKind> edge_kinds_;
    std::map<std::pair<NodeKind, std::string>, NodeId> index_;
};

/// Builds the tripartite graph. Ids follow first appearance: each patent,
/// then its IPC subclasses, then its institution.
inline HeteroGraph build_graph(const std::vector<PatentRecord>& records,
                               const std::map<std::string, std::string>& institution_map = {},
                               ParseMode mode = ParseMode::Lenient, Warnings* warnings = nullptr) {
    HeteroGraph g;
    for (const auto& r : records) {
        if (g.find(NodeKind::Patent, r.registration_id)) {
            if (mode == ParseMode::Strict)
                fail(ErrorCode::DuplicateRegistrationId, "duplicate registration id " + r.registration_id);
            warn(warnings, "duplicate registration id " + r.registration_id + ", keeping first");
            continue;
        }
        const NodeId p = g.add_node(NodeKind::Patent, r.registration_id);
        for (const auto& code : r.ipc_codes) g.add_edge(p, g.add_node(NodeKind::Ipc, code.subclass_key()));
        if (r.institution) {
            auto it = institution_map.find(*r.institution);
            std::string canonical = it == institution_map.end() ? *r.institution : it->second;
            if (!canonical.empty()) g.add_edge(p, g.add_node(NodeKind::Institution, std::move(canonical)));
        }
    }
    return g;
}

/// Induced subgraph on the given node kinds; ids are reassigned densely in
/// the original order.
inline HeteroGraph subgraph_by_kind(const HeteroGraph& g, const std::set<NodeKind>& kinds) {
    HeteroGraph out;
    std::vector<std::optional<NodeId>> remap(g.node_count());
    for (const auto& n : g.nodes())
        if (kinds.contains(n.kind)) remap[n.id] = out.add_node(n.kind, n.key);
    for (const auto& e : g.topology().edges())
        if (remap[e.u] && remap[e.v]) out.add_edge(*remap[e.u], *remap[e.v]);
    return out;
}

struct WeightedEdge {
    NodeId a;  // original patent ids, a < b
    NodeId b;
    std::size_t weight;
    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Patent co-classification graph: patents joined by the number of shared
/// IPC subclasses.
struct PatentProjection {
    std::vector<NodeId> patents;
    std::vector<WeightedEdge> edges;  // sorted by (a, b)
};

inline PatentProjection project_patent_graph(const HeteroGraph& g) {
    PatentProjection out;
    std::map<std::pair<NodeId, NodeId>, std::size_t> weights;
    const Graph& t = g.topology();
    for (const auto& n : g.nodes()) {
        if (n.kind == NodeKind::Patent) out.patents.push_back(n.id);
        if (n.kind != NodeKind::Ipc) continue;
        auto inc = t.incidences(n.id);
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j)
                ++weights[{inc[i].node, inc[j].node}];
    }
    out.edges.reserve(weights.size());
    for (const auto& [ab, w] : weights) out.edges.push_back({ab.first, ab.second, w});
    return out;
}

} // namespace patgraph

#endif
