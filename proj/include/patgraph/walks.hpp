#ifndef PATGRAPH_WALKS_HPP
#define PATGRAPH_WALKS_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace patgraph {

struct WalkCorpus {
    std::vector<std::vector<NodeId>> walks;  // walks[i].front() is the start node
    std::uint64_t seed = 0;
};

/// Uniform random-walk settings. Dimension/window/epochs feed the skip-gram
/// trainer.
struct DeepWalkConfig {
    std::size_t walk_length = 10;
    std::size_t num_walks = 80;
    std::size_t dim = 64;
    std::size_t window = 5;
    std::size_t epochs = 1;
    std::size_t negatives = 5;
    double learning_rate = 0.025;
};

struct Node2VecConfig {
    std::size_t dim = 64;
    std::size_t walk_length = 30;
    std::size_t num_walks = 200;
    std::size_t window = 5;
    std::size_t epochs = 3;
    double p = 1.0;  // return
    double q = 1.0;  // in-out
    std::size_t negatives = 5;
    double learning_rate = 0.025;
};

namespace detail {

inline void check_walk_counts(std::size_t walk_length, std::size_t num_walks) {
    if (walk_length == 0 || num_walks == 0) fail(ErrorCode::InvalidArgument, "walk length and count must be positive");
}

/// Visits walks in pass-major order: each pass covers every node once in a
/// seed-shuffled order. Walk i draws from its own stream so results do not
/// depend on the worker count.
template <class Step>
WalkCorpus run_walks(const Graph& g, std::size_t walk_length, std::size_t num_walks, std::uint64_t seed,
                     Step&& step) {
    const std::size_t n = g.node_count();
    if (n == 0) fail(ErrorCode::EmptyGraph, "cannot walk an empty graph");
    WalkCorpus corpus;
    corpus.seed = seed;
    corpus.walks.resize(n * num_walks);
    std::vector<NodeId> starts(n * num_walks);
    std::vector<NodeId> order(n);
    for (std::size_t pass = 0; pass < num_walks; ++pass) {
        for (NodeId v = 0; v < n; ++v) order[v] = v;
        Rng rng = make_rng(seed, pass);
        shuffle(order, rng);
        std::copy(order.begin(), order.end(), starts.begin() + static_cast<std::ptrdiff_t>(pass * n));
    }
    const std::uint64_t walk_seed = mix_seed(seed, 0x5eedULL << 32);
    for_each_chunk(starts.size(), 64, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            Rng rng = make_rng(walk_seed, i);
            auto& walk = corpus.walks[i];
            walk.reserve(walk_length);
            walk.push_back(starts[i]);
            while (walk.size() < walk_length) {
                const NodeId cur = walk.back();
                if (g.degree(cur) == 0) break;
                walk.push_back(step(walk, rng));
            }
        }
    });
    return corpus;
}

} // namespace detail

/// Uniform (first-order) random walks.
inline WalkCorpus generate_walks(const Graph& g, const DeepWalkConfig& cfg, std::uint64_t seed) {
    detail::check_walk_counts(cfg.walk_length, cfg.num_walks);
    return detail::run_walks(g, cfg.walk_length, cfg.num_walks, seed,
                             [&](const std::vector<NodeId>& walk, Rng& rng) {
                                 auto inc = g.incidences(walk.back());
                                 return inc[uniform_index(rng, inc.size())].node;
                             });
}

/// Second-order transition sampler. Arriving at v from t, neighbor x of v
/// has weight 1/p if x == t, 1 if x is adjacent to t, 1/q otherwise. One
/// alias table per (v, t) is built up front.
class Node2VecSampler {
public:
    Node2VecSampler(const Graph& g, double p, double q) : g_(g), p_(p), q_(q) {
        if (!(p > 0.0) || !(q > 0.0)) fail(ErrorCode::InvalidArgument, "node2vec p and q must be positive");
        const std::size_t n = g.node_count();
        offset_.assign(n + 1, 0);
        for (NodeId v = 0; v < n; ++v) offset_[v + 1] = offset_[v] + g.degree(v);
        tables_.resize(offset_[n]);
        for (NodeId v = 0; v < n; ++v) {
            auto inc = g.incidences(v);
            for (std::size_t k = 0; k < inc.size(); ++k) tables_[offset_[v] + k].reset(weights(inc[k].node, v));
        }
    }

    /// Unnormalized weights over v's neighbors (in incidence order) after
    /// arriving from t.
    std::vector<double> weights(NodeId t, NodeId v) const {
        auto inc = g_.incidences(v);
        std::vector<double> w(inc.size());
        for (std::size_t k = 0; k < inc.size(); ++k) {
            const NodeId x = inc[k].node;
            if (x == t) w[k] = 1.0 / p_;
            else if (g_.has_edge(x, t)) w[k] = 1.0;
            else w[k] = 1.0 / q_;
        }
        return w;
    }

    /// Normalized transition distribution from (t -> v).
    std::vector<double> probabilities(NodeId t, NodeId v) const {
        auto w = weights(t, v);
        double total = 0.0;
        for (double x : w) total += x;
        for (double& x : w) x /= total;
        return w;
    }

    NodeId first_step(NodeId v, Rng& rng) const {
        auto inc = g_.incidences(v);
        return inc[uniform_index(rng, inc.size())].node;
    }

    /// Next node after the arc t -> v; t must be a neighbor of v.
    NodeId next(NodeId t, NodeId v, Rng& rng) const {
        auto inc = g_.incidences(v);
        auto it = std::lower_bound(inc.begin(), inc.end(), t,
                                   [](const Incidence& a, NodeId key) { return a.node < key; });
        const std::size_t k = static_cast<std::size_t>(it - inc.begin());
        return inc[tables_[offset_[v] + k].sample(rng)].node;
    }

private:
    const Graph& g_;
    double p_, q_;
    std::vector<std::size_t> offset_;
    std::vector<AliasTable> tables_;
};

/// p/q-biased second-order walks; the first step is uniform.
inline WalkCorpus generate_walks_biased(const Graph& g, const Node2VecConfig& cfg, std::uint64_t seed) {
    detail::check_walk_counts(cfg.walk_length, cfg.num_walks);
    Node2VecSampler sampler(g, cfg.p, cfg.q);
    return detail::run_walks(g, cfg.walk_length, cfg.num_walks, seed,
                             [&](const std::vector<NodeId>& walk, Rng& rng) {
                                 if (walk.size() == 1) return sampler.first_step(walk.back(), rng);
                                 return sampler.next(walk[walk.size() - 2], walk.back(), rng);
                             });
}

} // namespace patgraph

#endif
