#ifndef PATGRAPH_SDNE_HPP
#define PATGRAPH_SDNE_HPP

#include <cmath>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "embedding.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "random.hpp"
#include "sgns.hpp"
#include "vecmath.hpp"

namespace patgraph {

struct SdneConfig {
    std::vector<std::size_t> hidden_sizes = {256, 128};
    std::size_t batch_size = 3000;
    std::size_t epochs = 40;
    double alpha = 0.2;   // first-order (Laplacian) weight
    double beta = 5.0;    // reconstruction penalty on nonzero entries
    double nu = 1e-5;     // L2 weight decay
    double learning_rate = 1e-3;
    double init_std = 0.01;
};

/// Penalty row b_i: beta where the adjacency row is nonzero, 1 elsewhere.
inline std::vector<double> sdne_penalty_row(std::span<const double> adjacency_row, double beta) {
    std::vector<double> b(adjacency_row.size(), 1.0);
    for (std::size_t j = 0; j < b.size(); ++j)
        if (adjacency_row[j] > 0.0) b[j] = beta;
    return b;
}

/// Symmetric sigmoid autoencoder n -> h1 -> ... -> hk -> ... -> h1 -> n over
/// adjacency rows. Parameters live in one flat vector (per layer: W then b,
/// W stored out x in column-major). Loss over a node batch S:
///   sum_{i in S} ||(xhat_i - x_i) * b_i||^2
///   + alpha * sum_{(i,j) in E, i,j in S} ||y_i - y_j||^2
///   + nu/2 * sum_l ||W_l||_F^2
/// with y the bottleneck activations.
class SdneModel {
public:
    SdneModel(std::size_t n, std::vector<std::size_t> hidden, const SdneConfig& cfg)
        : cfg_(cfg), sizes_{n} {
        if (hidden.empty()) fail(ErrorCode::InvalidArgument, "SDNE needs at least one hidden layer");
        for (auto h : hidden) sizes_.push_back(h);
        for (std::size_t i = hidden.size() - 1; i-- > 0;) sizes_.push_back(hidden[i]);
        sizes_.push_back(n);
        std::size_t off = 0;
        for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
            w_offset_.push_back(off);
            off += sizes_[l + 1] * sizes_[l];
            b_offset_.push_back(off);
            off += sizes_[l + 1];
        }
        params_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(off));
    }

    std::size_t layer_count() const noexcept { return sizes_.size() - 1; }
    std::size_t bottleneck_layer() const noexcept { return layer_count() / 2; }  // activation index of y
    std::size_t embedding_dim() const noexcept { return sizes_[bottleneck_layer()]; }
    Eigen::VectorXd& params() noexcept { return params_; }
    const Eigen::VectorXd& params() const noexcept { return params_; }

    void initialize(Rng& rng) {
        std::normal_distribution<double> normal(0.0, cfg_.init_std);
        params_.setZero();
        for (std::size_t l = 0; l < layer_count(); ++l) {
            auto w = weight(params_, l);
            for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = normal(rng);
        }
    }

    /// Loss on the batch; fills grad (same size as params) when non-null.
    double loss_and_gradient(const Graph& g, std::span<const NodeId> batch, Eigen::VectorXd* grad) const {
        const auto bsz = static_cast<Eigen::Index>(batch.size());
        const Eigen::SparseMatrix<double, Eigen::RowMajor> x = batch_rows(g, batch);
        std::vector<Eigen::MatrixXd> acts;
        forward(x, acts);
        const Eigen::MatrixXd& xhat = acts.back();
        const Eigen::MatrixXd& y = acts[bottleneck_layer()];

        // Weighted residual (xhat - x) * b.
        Eigen::MatrixXd r = xhat;
        for (Eigen::Index i = 0; i < bsz; ++i)
            for (const auto& inc : g.incidences(batch[static_cast<std::size_t>(i)]))
                r(i, inc.node) = cfg_.beta * (xhat(i, inc.node) - 1.0);
        double loss = r.squaredNorm();

        std::vector<std::pair<Eigen::Index, Eigen::Index>> local_edges = batch_edges(g, batch);
        for (auto [i, j] : local_edges) loss += cfg_.alpha * (y.row(i) - y.row(j)).squaredNorm();
        for (std::size_t l = 0; l < layer_count(); ++l) loss += 0.5 * cfg_.nu * weight(params_, l).squaredNorm();
        if (!grad) return loss;

        grad->setZero(params_.size());
        // d/dxhat of ||r||^2 : 2 r * b
        Eigen::MatrixXd delta = 2.0 * r;
        for (Eigen::Index i = 0; i < bsz; ++i)
            for (const auto& inc : g.incidences(batch[static_cast<std::size_t>(i)])) delta(i, inc.node) *= cfg_.beta;

        for (std::size_t l = layer_count(); l-- > 0;) {
            const Eigen::MatrixXd& out = acts[l + 1];
            if (l + 1 == bottleneck_layer()) {
                for (auto [i, j] : local_edges) {
                    Eigen::RowVectorXd d = 2.0 * cfg_.alpha * (y.row(i) - y.row(j));
                    delta.row(i) += d;
                    delta.row(j) -= d;
                }
            }
            Eigen::MatrixXd dz = delta.array() * out.array() * (1.0 - out.array());
            auto gw = weight(*grad, l);
            if (l == 0) gw.noalias() = (Eigen::MatrixXd(x.transpose() * dz)).transpose();
            else gw.noalias() = dz.transpose() * acts[l];
            gw += cfg_.nu * weight(params_, l);
            bias(*grad, l) = dz.colwise().sum().transpose();
            if (l > 0) delta = dz * weight(params_, l);
        }
        return loss;
    }

    /// Bottleneck activations for the given nodes (rows in batch order).
    Eigen::MatrixXd embed(const Graph& g, std::span<const NodeId> batch) const {
        std::vector<Eigen::MatrixXd> acts;
        forward(batch_rows(g, batch), acts, bottleneck_layer());
        return acts[bottleneck_layer()];
    }

private:
    using WeightMap = Eigen::Map<Eigen::MatrixXd>;
    using ConstWeightMap = Eigen::Map<const Eigen::MatrixXd>;

    WeightMap weight(Eigen::VectorXd& p, std::size_t l) const {
        return {p.data() + w_offset_[l], static_cast<Eigen::Index>(sizes_[l + 1]), static_cast<Eigen::Index>(sizes_[l])};
    }
    ConstWeightMap weight(const Eigen::VectorXd& p, std::size_t l) const {
        return {p.data() + w_offset_[l], static_cast<Eigen::Index>(sizes_[l + 1]), static_cast<Eigen::Index>(sizes_[l])};
    }
    Eigen::Map<Eigen::VectorXd> bias(Eigen::VectorXd& p, std::size_t l) const {
        return {p.data() + b_offset_[l], static_cast<Eigen::Index>(sizes_[l + 1])};
    }
    Eigen::Map<const Eigen::VectorXd> bias(const Eigen::VectorXd& p, std::size_t l) const {
        return {p.data() + b_offset_[l], static_cast<Eigen::Index>(sizes_[l + 1])};
    }

    Eigen::SparseMatrix<double, Eigen::RowMajor> batch_rows(const Graph& g, std::span<const NodeId> batch) const {
        std::vector<Eigen::Triplet<double>> entries;
        for (std::size_t i = 0; i < batch.size(); ++i)
            for (const auto& inc : g.incidences(batch[i]))
                entries.emplace_back(static_cast<int>(i), static_cast<int>(inc.node), 1.0);
        Eigen::SparseMatrix<double, Eigen::RowMajor> x(static_cast<Eigen::Index>(batch.size()),
                                                       static_cast<Eigen::Index>(sizes_[0]));
        x.setFromTriplets(entries.begin(), entries.end());
        return x;
    }

    static std::vector<std::pair<Eigen::Index, Eigen::Index>> batch_edges(const Graph& g, std::span<const NodeId> batch) {
        std::vector<std::int64_t> pos(g.node_count(), -1);
        for (std::size_t i = 0; i < batch.size(); ++i) pos[batch[i]] = static_cast<std::int64_t>(i);
        std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
        for (const auto& e : g.edges())
            if (pos[e.u] >= 0 && pos[e.v] >= 0) out.emplace_back(pos[e.u], pos[e.v]);
        return out;
    }

    /// acts[0] is left empty (the sparse input); acts[l] for l >= 1.
    void forward(const Eigen::SparseMatrix<double, Eigen::RowMajor>& x, std::vector<Eigen::MatrixXd>& acts,
                 std::size_t stop = static_cast<std::size_t>(-1)) const {
        const std::size_t last = std::min(stop, layer_count());
        acts.assign(last + 1, Eigen::MatrixXd());
        for (std::size_t l = 0; l < last; ++l) {
            Eigen::MatrixXd z = l == 0 ? Eigen::MatrixXd(x * weight(params_, 0).transpose())
                                       : Eigen::MatrixXd(acts[l] * weight(params_, l).transpose());
            z.rowwise() += bias(params_, l).transpose();
            acts[l + 1] = z.unaryExpr([](double v) { return sigmoid(v); });
        }
    }

    SdneConfig cfg_;
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> w_offset_, b_offset_;
    Eigen::VectorXd params_;
};

/// Full-graph SDNE loss: reconstruction over all rows, first-order term over
/// all edges, weight decay once.
inline double sdne_total_loss(const SdneModel& model, const Graph& g) {
    std::vector<NodeId> all(g.node_count());
    for (NodeId v = 0; v < all.size(); ++v) all[v] = v;
    return model.loss_and_gradient(g, all, nullptr);
}

/// Trains with minibatch Adam over seed-shuffled node batches and returns
/// the bottleneck activations. loss_history, when given, receives the
/// full-graph loss after every epoch.
inline EmbeddingMatrix train_sdne(const Graph& g, const SdneConfig& cfg, std::uint64_t seed,
                                  std::vector<std::string> keys = {}, std::vector<double>* loss_history = nullptr) {
    const std::size_t n = g.node_count();
    if (n < 2 || g.edge_count() == 0) fail(ErrorCode::EmptyGraph, "SDNE needs at least two nodes and one edge");
    if (cfg.batch_size == 0 || cfg.epochs == 0 || cfg.hidden_sizes.empty() || cfg.hidden_sizes.back() < 2)
        fail(ErrorCode::InvalidArgument, "SDNE needs positive batch size/epochs and an embedding of dim >= 2");
    if (keys.empty()) keys = default_keys(n);
    if (keys.size() != n) fail(ErrorCode::InvalidArgument, "key count does not match node count");

    Rng rng = make_rng(seed, 0x5d2e);
    SdneModel model(n, cfg.hidden_sizes, cfg);
    model.initialize(rng);

    const Eigen::Index p = model.params().size();
    Eigen::VectorXd m1 = Eigen::VectorXd::Zero(p), m2 = Eigen::VectorXd::Zero(p), grad(p);
    constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    std::size_t t = 0;
    std::vector<NodeId> order(n);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (NodeId v = 0; v < n; ++v) order[v] = v;
        shuffle(order, rng);
        for (std::size_t start = 0; start < n; start += cfg.batch_size) {
            const std::size_t end = std::min(n, start + cfg.batch_size);
            std::span<const NodeId> batch(order.data() + start, end - start);
            const double loss = model.loss_and_gradient(g, batch, &grad);
            if (!std::isfinite(loss) || !grad.allFinite())
                fail(ErrorCode::NonFiniteLoss, "SDNE loss became non-finite at epoch " + std::to_string(epoch) +
                                                   ", batch starting at " + std::to_string(start));
            ++t;
            m1 = b1 * m1 + (1.0 - b1) * grad;
            m2 = b2 * m2 + (1.0 - b2) * grad.cwiseProduct(grad);
            const double c1 = 1.0 - std::pow(b1, static_cast<double>(t));
            const double c2 = 1.0 - std::pow(b2, static_cast<double>(t));
            model.params().array() -=
                cfg.learning_rate * (m1.array() / c1) / ((m2.array() / c2).sqrt() + eps);
        }
        if (loss_history) loss_history->push_back(sdne_total_loss(model, g));
    }

    EmbeddingMatrix e(model.embedding_dim(), "sdne", seed);
    std::vector<NodeId> chunk;
    for (std::size_t start = 0; start < n; start += cfg.batch_size) {
        const std::size_t end = std::min(n, start + cfg.batch_size);
        chunk.resize(end - start);
        for (std::size_t i = start; i < end; ++i) chunk[i - start] = static_cast<NodeId>(i);
        Eigen::MatrixXd y = model.embed(g, chunk);
        std::vector<double> row(static_cast<std::size_t>(y.cols()));
        for (Eigen::Index i = 0; i < y.rows(); ++i) {
            for (Eigen::Index d = 0; d < y.cols(); ++d) row[static_cast<std::size_t>(d)] = y(i, d);
            e.add_row(keys[start + static_cast<std::size_t>(i)], row);
        }
    }
    if (!e.all_finite()) fail(ErrorCode::NonFiniteLoss, "SDNE produced non-finite embeddings");
    return e;
}

} // namespace patgraph

#endif
