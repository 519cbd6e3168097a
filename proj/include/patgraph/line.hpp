#ifndef PATGRAPH_LINE_HPP
#define PATGRAPH_LINE_HPP

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "embedding.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "random.hpp"
#include "sgns.hpp"

namespace patgraph {

enum class LineOrder { First = 1, Second = 2, Both = 3 };

struct LineConfig {
    std::size_t dim = 128;
    LineOrder order = LineOrder::Second;
    std::size_t batch_size = 1024;
    std::size_t epochs = 50;
    std::size_t negatives = 5;
    double learning_rate = 0.025;
};

/// Vertex and context tables, row-major n x dim.
struct LineModel {
    std::size_t n = 0, dim = 0;
    std::vector<double> vertex, context;

    LineModel(std::size_t n_, std::size_t dim_) : n(n_), dim(dim_), vertex(n_ * dim_, 0.0), context(n_ * dim_, 0.0) {}

    std::span<double> vertex_row(std::size_t i) { return {vertex.data() + i * dim, dim}; }
    std::span<const double> vertex_row(std::size_t i) const { return {vertex.data() + i * dim, dim}; }
    std::span<double> context_row(std::size_t i) { return {context.data() + i * dim, dim}; }
    std::span<const double> context_row(std::size_t i) const { return {context.data() + i * dim, dim}; }

    /// Table that plays the "target" role for the given order.
    std::span<const double> target_row(LineOrder order, std::size_t i) const {
        return order == LineOrder::First ? vertex_row(i) : context_row(i);
    }
};

/// Loss of one sampled arc u -> v with negatives:
///   -log s(t_v . u_u) - sum_n log s(-t_n . u_u)
/// where t is the vertex table (first order) or context table (second order).
inline double line_sample_loss(const LineModel& m, LineOrder order, NodeId u, NodeId v,
                               std::span<const NodeId> negatives) {
    auto src = m.vertex_row(u);
    double loss = -log_sigmoid(dot(m.target_row(order, v), src));
    for (NodeId k : negatives) loss -= log_sigmoid(-dot(m.target_row(order, k), src));
    return loss;
}

/// Accumulates d(line_sample_loss)/d(tables) into grad (same shape as m).
inline void line_sample_gradient(const LineModel& m, LineOrder order, NodeId u, NodeId v,
                                 std::span<const NodeId> negatives, LineModel& grad) {
    std::vector<std::span<const double>> outs{m.target_row(order, v)};
    std::vector<NodeId> ids{v};
    for (NodeId k : negatives) {
        outs.push_back(m.target_row(order, k));
        ids.push_back(k);
    }
    std::vector<double> labels(outs.size(), 0.0);
    labels[0] = 1.0;
    std::vector<double> g_in(m.dim), g_out(outs.size() * m.dim);
    logistic_loss_grad(m.vertex_row(u), outs, labels, g_in, g_out);
    for (std::size_t d = 0; d < m.dim; ++d) grad.vertex_row(u)[d] += g_in[d];
    for (std::size_t o = 0; o < ids.size(); ++o) {
        auto row = order == LineOrder::First ? grad.vertex_row(ids[o]) : grad.context_row(ids[o]);
        for (std::size_t d = 0; d < m.dim; ++d) row[d] += g_out[o * m.dim + d];
    }
}

namespace detail {

inline LineModel train_line_order(const Graph& g, LineOrder order, std::size_t dim, const LineConfig& cfg, Rng& rng) {
    const std::size_t n = g.node_count();
    LineModel model(n, dim);
    for (double& x : model.vertex) x = (uniform01(rng) - 0.5) / static_cast<double>(dim);

    // Each undirected edge contributes both arcs, uniformly weighted.
    std::vector<std::pair<NodeId, NodeId>> arcs;
    arcs.reserve(2 * g.edge_count());
    for (const auto& e : g.edges()) {
        arcs.emplace_back(e.u, e.v);
        arcs.emplace_back(e.v, e.u);
    }
    AliasTable arc_table(std::vector<double>(arcs.size(), 1.0));
    std::vector<double> noise(n);
    for (NodeId v = 0; v < n; ++v) noise[v] = std::pow(static_cast<double>(g.degree(v)), 0.75);
    AliasTable negative_table(noise);

    const std::size_t total = cfg.epochs * arcs.size();
    LogisticStep step(dim);
    std::vector<std::span<double>> outs;
    auto target = [&](NodeId k) { return order == LineOrder::First ? model.vertex_row(k) : model.context_row(k); };
    double lr = cfg.learning_rate;
    for (std::size_t done = 0; done < total; ++done) {
        if (done % cfg.batch_size == 0)
            lr = cfg.learning_rate * std::max(1e-4, 1.0 - static_cast<double>(done) / static_cast<double>(total));
        const auto [u, v] = arcs[arc_table.sample(rng)];
        outs.assign(1, target(v));
        for (std::size_t k = 0; k < cfg.negatives; ++k) outs.push_back(target(static_cast<NodeId>(negative_table.sample(rng))));
        step.apply(model.vertex_row(u), outs, lr);
    }
    return model;
}

} // namespace detail

/// LINE edge-sampling SGD. Second order uses separate context vectors;
/// `Both` trains each order on half of `dim` and concatenates.
inline EmbeddingMatrix train_line(const Graph& g, const LineConfig& cfg, std::uint64_t seed,
                                  std::vector<std::string> keys = {}) {
    if (g.edge_count() == 0) fail(ErrorCode::EmptyGraph, "LINE needs at least one edge");
    if (cfg.dim < 2 || cfg.batch_size == 0 || cfg.epochs == 0)
        fail(ErrorCode::InvalidArgument, "LINE needs dim >= 2 and positive batch size/epochs");
    const std::size_t n = g.node_count();
    if (keys.empty()) keys = default_keys(n);
    if (keys.size() != n) fail(ErrorCode::InvalidArgument, "key count does not match node count");

    Rng rng = make_rng(seed, 0x11e);
    std::vector<LineModel> parts;
    std::vector<std::size_t> dims;
    if (cfg.order == LineOrder::Both) {
        dims = {cfg.dim / 2, cfg.dim - cfg.dim / 2};
        parts.push_back(detail::train_line_order(g, LineOrder::First, dims[0], cfg, rng));
        parts.push_back(detail::train_line_order(g, LineOrder::Second, dims[1], cfg, rng));
    } else {
        dims = {cfg.dim};
        parts.push_back(detail::train_line_order(g, cfg.order, cfg.dim, cfg, rng));
    }
    const char* tag = cfg.order == LineOrder::First ? "line1" : cfg.order == LineOrder::Second ? "line2" : "line";
    EmbeddingMatrix e(cfg.dim, tag, seed);
    std::vector<double> buf;
    for (NodeId v = 0; v < n; ++v) {
        buf.clear();
        for (const auto& p : parts) {
            auto r = p.vertex_row(v);
            buf.insert(buf.end(), r.begin(), r.end());
        }
        e.add_row(keys[v], buf);
    }
    if (!e.all_finite()) fail(ErrorCode::NonFiniteLoss, "LINE produced non-finite values");
    return e;
}

} // namespace patgraph

#endif
