#ifndef PATGRAPH_RECOMMEND_HPP
#define PATGRAPH_RECOMMEND_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "embedding.hpp"
#include "error.hpp"
#include "hetero_graph.hpp"
#include "vecmath.hpp"

namespace patgraph {

struct Explanation {
    std::vector<std::string> shared;  // shared IPC subclass keys, ascending
    double jaccard = 0.0;
};

struct Neighbor {
    std::string key;
    double score = 0.0;
    Explanation explanation;
};

struct Recommendation {
    std::string query_key;
    std::vector<Neighbor> neighbors;  // score descending, then key ascending
    Warnings warnings;
};

/// Shared IPC subclasses of two patents and the Jaccard index of their IPC
/// sets (0 when both are empty).
inline Explanation explain_similarity(const HeteroGraph& g, const std::string& a, const std::string& b) {
    auto lookup = [&](const std::string& key) {
        if (auto id = g.find(NodeKind::Patent, key)) return *id;
        if (g.find_any(key)) fail(ErrorCode::KindMismatch, "'" + key + "' is not a patent node");
        fail(ErrorCode::UnknownKey, "unknown node '" + key + "'");
    };
    const auto ia = g.ipc_keys(lookup(a));
    const auto ib = g.ipc_keys(lookup(b));
    Explanation ex;
    std::set_intersection(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(ex.shared));
    const std::size_t uni = ia.size() + ib.size() - ex.shared.size();
    ex.jaccard = uni == 0 ? 0.0 : static_cast<double>(ex.shared.size()) / static_cast<double>(uni);
    return ex;
}

/// Exact cosine scan. Candidates are the rows accepted by `is_candidate`
/// (all rows when empty), never the query itself. Zero-norm candidates are
/// skipped with a warning.
inline Recommendation top_k_similar(const EmbeddingMatrix& e, const std::string& query, std::size_t k,
                                    const std::function<bool(const std::string&)>& is_candidate = {}) {
    if (k == 0) fail(ErrorCode::InvalidArgument, "k must be at least 1");
    auto qi = e.find(query);
    if (!qi) fail(ErrorCode::UnknownKey, "no embedding for '" + query + "'");
    const auto qv = e.row(*qi);
    const double qn = norm(qv);
    if (qn == 0.0) fail(ErrorCode::ZeroVector, "query '" + query + "' has a zero embedding");

    Recommendation rec;
    rec.query_key = query;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i == *qi || (is_candidate && !is_candidate(e.key(i)))) continue;
        const double cn = norm(e.row(i));
        if (cn == 0.0) {
            rec.warnings.push_back("skipping zero vector '" + e.key(i) + "'");
            continue;
        }
        rec.neighbors.push_back({e.key(i), dot(qv, e.row(i)) / (qn * cn), {}});
    }
    auto better = [](const Neighbor& a, const Neighbor& b) {
        return a.score != b.score ? a.score > b.score : a.key < b.key;
    };
    const std::size_t take = std::min(k, rec.neighbors.size());
    std::partial_sort(rec.neighbors.begin(), rec.neighbors.begin() + static_cast<std::ptrdiff_t>(take),
                      rec.neighbors.end(), better);
    rec.neighbors.resize(take);
    return rec;
}

/// Patent-only recommendation with IPC-overlap explanations.
inline Recommendation recommend(const HeteroGraph& g, const EmbeddingMatrix& e, const std::string& query, std::size_t k) {
    if (!g.find(NodeKind::Patent, query)) {
        if (g.find_any(query)) fail(ErrorCode::KindMismatch, "'" + query + "' is not a patent node");
        fail(ErrorCode::UnknownKey, "unknown patent '" + query + "'");
    }
    auto rec = top_k_similar(e, query, k, [&](const std::string& key) { return g.find(NodeKind::Patent, key).has_value(); });
    for (auto& nb : rec.neighbors) nb.explanation = explain_similarity(g, query, nb.key);
    return rec;
}

/// Macro-averaged precision@k: for each patent with at least one IPC and an
/// embedding row, the share of its top-k patent neighbors that share an IPC
/// subclass with it.
inline double evaluate_recommender(const HeteroGraph& g, const EmbeddingMatrix& e, std::size_t k) {
    if (k == 0) fail(ErrorCode::InvalidArgument, "k must be at least 1");
    double total = 0.0;
    std::size_t queries = 0;
    for (const auto& n : g.nodes()) {
        if (n.kind != NodeKind::Patent || g.ipc_keys(n.id).empty() || !e.find(n.key)) continue;
        if (norm(e.row(*e.find(n.key))) == 0.0) continue;
        auto rec = recommend(g, e, n.key, k);
        if (rec.neighbors.empty()) continue;
        std::size_t hits = 0;
        for (const auto& nb : rec.neighbors) hits += nb.explanation.shared.empty() ? 0 : 1;
        total += static_cast<double>(hits) / static_cast<double>(rec.neighbors.size());
        ++queries;
    }
    return queries == 0 ? 0.0 : total / static_cast<double>(queries);
}

inline nlohmann::json to_json(const Recommendation& rec) {
    nlohmann::json out;
    out["query"] = rec.query_key;
    out["neighbors"] = nlohmann::json::array();
    for (const auto& nb : rec.neighbors)
        out["neighbors"].push_back({{"key", nb.key},
                                    {"score", nb.score},
                                    {"shared_ipc", nb.explanation.shared},
                                    {"jaccard", nb.explanation.jaccard}});
    if (!rec.warnings.empty()) out["warnings"] = rec.warnings;
    return out;
}

} // namespace patgraph

#endif
