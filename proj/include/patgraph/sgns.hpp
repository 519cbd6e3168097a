#ifndef PATGRAPH_SGNS_HPP
#define PATGRAPH_SGNS_HPP

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "embedding.hpp"
#include "error.hpp"
#include "random.hpp"
#include "vecmath.hpp"
#include "walks.hpp"

namespace patgraph {

/// Negative-sampling logistic loss for one input vector against a set of
/// output vectors with 0/1 labels:
///   L = -sum_o [ y_o log s(u_o.v) + (1 - y_o) log s(-u_o.v) ].
/// Writes dL/dv into grad_input and dL/du_o into grad_outputs (row o at
/// offset o*dim). Returns L.
inline double logistic_loss_grad(std::span<const double> input, std::span<const std::span<const double>> outputs,
                                 std::span<const double> labels, std::span<double> grad_input,
                                 std::span<double> grad_outputs) {
    const std::size_t dim = input.size();
    std::fill(grad_input.begin(), grad_input.end(), 0.0);
    double loss = 0.0;
    for (std::size_t o = 0; o < outputs.size(); ++o) {
        const double z = dot(input, outputs[o]);
        loss -= labels[o] * log_sigmoid(z) + (1.0 - labels[o]) * log_sigmoid(-z);
        const double g = sigmoid(z) - labels[o];
        for (std::size_t d = 0; d < dim; ++d) {
            grad_input[d] += g * outputs[o][d];
            grad_outputs[o * dim + d] = g * input[d];
        }
    }
    return loss;
}

/// Loss of one (center, context) skip-gram pair with sampled negatives.
inline double sgns_pair_loss(std::span<const double> center, std::span<const double> context,
                             std::span<const std::span<const double>> negatives) {
    double loss = -log_sigmoid(dot(context, center));
    for (auto n : negatives) loss -= log_sigmoid(-dot(n, center));
    return loss;
}

/// Reusable buffers for a logistic update of one input against K+1 outputs.
class LogisticStep {
public:
    explicit LogisticStep(std::size_t dim) : dim_(dim), grad_in_(dim) {}

    /// Gradient step on input row and output rows (first output positive,
    /// rest negative). Returns the loss before the step.
    double apply(std::span<double> input, std::span<const std::span<double>> outputs, double lr) {
        outs_.assign(outputs.begin(), outputs.end());
        labels_.assign(outputs.size(), 0.0);
        if (!labels_.empty()) labels_[0] = 1.0;
        grad_out_.resize(outputs.size() * dim_);
        const double loss = logistic_loss_grad(input, outs_, labels_, grad_in_, grad_out_);
        for (std::size_t o = 0; o < outputs.size(); ++o)
            for (std::size_t d = 0; d < dim_; ++d) outputs[o][d] -= lr * grad_out_[o * dim_ + d];
        for (std::size_t d = 0; d < dim_; ++d) input[d] -= lr * grad_in_[d];
        return loss;
    }

private:
    std::size_t dim_;
    std::vector<double> grad_in_, grad_out_, labels_;
    std::vector<std::span<const double>> outs_;
};

/// All (center, context) position pairs within `window` inside one walk.
inline std::vector<std::pair<NodeId, NodeId>> context_pairs(std::span<const NodeId> walk, std::size_t window) {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        const std::size_t lo = i >= window ? i - window : 0;
        const std::size_t hi = std::min(walk.size() - 1, i + window);
        for (std::size_t j = lo; j <= hi; ++j)
            if (j != i) out.emplace_back(walk[i], walk[j]);
    }
    return out;
}

struct SgnsOptions {
    std::size_t dim = 64;
    std::size_t window = 5;
    std::size_t epochs = 1;
    std::size_t negatives = 5;
    double learning_rate = 0.025;
};

/// Row keys default to decimal node ids.
inline std::vector<std::string> default_keys(std::size_t n) {
    std::vector<std::string> keys(n);
    for (std::size_t i = 0; i < n; ++i) keys[i] = std::to_string(i);
    return keys;
}

/// Skip-gram with negative sampling over a walk corpus. Sequential and
/// deterministic for a given seed: walks are visited in a seed-shuffled
/// order each epoch, negatives come from unigram^0.75, and the learning rate
/// decays linearly from lr to lr/100. Returns the input vectors.
inline EmbeddingMatrix train_sgns(const WalkCorpus& corpus, std::size_t node_count, const SgnsOptions& opt,
                                  std::uint64_t seed, std::vector<std::string> keys = {}) {
    if (corpus.walks.empty()) fail(ErrorCode::EmptyCorpus, "skip-gram needs a non-empty walk corpus");
    if (opt.dim < 2 || opt.window == 0 || opt.epochs == 0)
        fail(ErrorCode::InvalidArgument, "skip-gram needs dim >= 2 and positive window/epochs");
    if (keys.empty()) keys = default_keys(node_count);
    if (keys.size() != node_count) fail(ErrorCode::InvalidArgument, "key count does not match node count");

    const std::size_t dim = opt.dim;
    Rng rng = make_rng(seed, 0x5695);
    std::vector<double> input(node_count * dim), output(node_count * dim, 0.0);
    for (double& x : input) x = (uniform01(rng) - 0.5) / static_cast<double>(dim);

    std::vector<double> freq(node_count, 0.0);
    double pairs_per_epoch = 0.0;
    for (const auto& walk : corpus.walks) {
        for (NodeId v : walk) {
            if (v >= node_count) fail(ErrorCode::InvalidArgument, "walk refers to an unknown node");
            freq[v] += 1.0;
        }
        for (std::size_t i = 0; i < walk.size(); ++i)
            pairs_per_epoch += static_cast<double>(std::min(walk.size() - 1, i + opt.window) - (i >= opt.window ? i - opt.window : 0));
    }
    for (double& f : freq) f = std::pow(f, 0.75);
    AliasTable negative_table(freq);

    const double total = std::max(1.0, pairs_per_epoch * static_cast<double>(opt.epochs));
    const double lr_min = opt.learning_rate / 100.0;
    double done = 0.0;
    LogisticStep step(dim);
    std::vector<std::span<double>> outs;
    std::vector<std::size_t> order(corpus.walks.size());
    auto row = [dim](std::vector<double>& m, std::size_t i) { return std::span<double>(m.data() + i * dim, dim); };

    for (std::size_t epoch = 0; epoch < opt.epochs; ++epoch) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        shuffle(order, rng);
        for (std::size_t w : order) {
            const auto& walk = corpus.walks[w];
            for (std::size_t i = 0; i < walk.size(); ++i) {
                const std::size_t lo = i >= opt.window ? i - opt.window : 0;
                const std::size_t hi = std::min(walk.size() - 1, i + opt.window);
                for (std::size_t j = lo; j <= hi; ++j) {
                    if (j == i) continue;
                    const double lr = opt.learning_rate - (opt.learning_rate - lr_min) * (done / total);
                    done += 1.0;
                    outs.assign(1, row(output, walk[j]));
                    for (std::size_t k = 0; k < opt.negatives; ++k) {
                        const auto neg = negative_table.sample(rng);
                        if (neg != walk[j]) outs.push_back(row(output, neg));
                    }
                    step.apply(row(input, walk[i]), outs, lr);
                }
            }
        }
    }

    EmbeddingMatrix e(dim, "sgns", seed);
    for (std::size_t v = 0; v < node_count; ++v) e.add_row(keys[v], std::span<const double>(input.data() + v * dim, dim));
    if (!e.all_finite()) fail(ErrorCode::NonFiniteLoss, "skip-gram produced non-finite values");
    return e;
}

/// DeepWalk: uniform walks + skip-gram.
inline EmbeddingMatrix train_deepwalk(const Graph& g, const DeepWalkConfig& cfg, std::uint64_t seed,
                                      std::vector<std::string> keys = {}) {
    auto corpus = generate_walks(g, cfg, seed);
    auto e = train_sgns(corpus, g.node_count(), {cfg.dim, cfg.window, cfg.epochs, cfg.negatives, cfg.learning_rate},
                        seed, std::move(keys));
    e.set_provenance("deepwalk", seed);
    return e;
}

/// Node2Vec: p/q-biased walks + skip-gram.
inline EmbeddingMatrix train_node2vec(const Graph& g, const Node2VecConfig& cfg, std::uint64_t seed,
                                      std::vector<std::string> keys = {}) {
    auto corpus = generate_walks_biased(g, cfg, seed);
    auto e = train_sgns(corpus, g.node_count(), {cfg.dim, cfg.window, cfg.epochs, cfg.negatives, cfg.learning_rate},
                        seed, std::move(keys));
    e.set_provenance("node2vec", seed);
    return e;
}

} // namespace patgraph

#endif
