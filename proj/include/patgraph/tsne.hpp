#ifndef PATGRAPH_TSNE_HPP
#define PATGRAPH_TSNE_HPP

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "embedding.hpp"
#include "error.hpp"
#include "random.hpp"

namespace patgraph {

struct TsneOptions {
    double perplexity = 30.0;
    std::size_t iterations = 1000;
    double learning_rate = 200.0;
    double exaggeration = 12.0;
    std::size_t exaggeration_iters = 250;
    double initial_momentum = 0.5;
    double final_momentum = 0.8;
    std::size_t momentum_switch_iter = 250;
    std::size_t log_every = 50;
};

struct Projection2D {
    std::vector<std::string> keys;
    std::vector<std::array<double, 2>> points;
    double final_kl = 0.0;
    std::size_t iterations = 0;
    std::vector<std::pair<std::size_t, double>> kl_history;  // (iteration, KL)
};

/// Conditional Gaussian distribution of one point over its neighbors at
/// precision beta, plus the entropy (nats) of that distribution.
struct RowCalibration {
    std::vector<double> p;
    double beta = 1.0;
    double perplexity = 0.0;
};

/// Gaussian row for given squared distances (self excluded) and precision.
inline RowCalibration gaussian_row(std::span<const double> sq_dist, double beta) {
    RowCalibration r;
    r.beta = beta;
    r.p.resize(sq_dist.size());
    double dmin = std::numeric_limits<double>::infinity();
    for (double d : sq_dist) dmin = std::min(dmin, d);
    double sum = 0.0, weighted = 0.0;
    for (std::size_t j = 0; j < sq_dist.size(); ++j) {
        r.p[j] = std::exp(-beta * (sq_dist[j] - dmin));
        sum += r.p[j];
        weighted += (sq_dist[j] - dmin) * r.p[j];
    }
    for (double& x : r.p) x /= sum;
    r.perplexity = std::exp(std::log(sum) + beta * weighted / sum);
    return r;
}

/// Bisection on beta until the row perplexity matches the target within
/// 1e-5 (at most 50 steps).
inline RowCalibration calibrate_row(std::span<const double> sq_dist, double perplexity) {
    double beta = 1.0, lo = 0.0, hi = std::numeric_limits<double>::infinity();
    RowCalibration best = gaussian_row(sq_dist, beta);
    for (int step = 0; step < 50; ++step) {
        RowCalibration r = gaussian_row(sq_dist, beta);
        if (std::abs(r.perplexity - perplexity) < std::abs(best.perplexity - perplexity)) best = r;
        if (std::abs(r.perplexity - perplexity) < 1e-5) return r;
        if (r.perplexity > perplexity) {
            lo = beta;
            beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
        } else {
            hi = beta;
            beta = 0.5 * (beta + lo);
        }
    }
    return best;
}

inline std::vector<double> squared_distances(std::span<const double> data, std::size_t n, std::size_t d) {
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = data[i * d + k] - data[j * d + k];
                s += diff * diff;
            }
            out[i * n + j] = out[j * n + i] = s;
        }
    return out;
}

/// Row-stochastic conditional affinities p_{j|i} (diagonal zero).
inline std::vector<double> conditional_affinities(std::span<const double> sq_dist, std::size_t n, double perplexity) {
    std::vector<double> p(n * n, 0.0), row(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0, k = 0; j < n; ++j)
            if (j != i) row[k++] = sq_dist[i * n + j];
        auto cal = calibrate_row(row, perplexity);
        for (std::size_t j = 0, k = 0; j < n; ++j)
            if (j != i) p[i * n + j] = cal.p[k++];
    }
    return p;
}

/// Joint affinities (p_{j|i} + p_{i|j}) / 2n; sums to one.
inline std::vector<double> joint_affinities(std::span<const double> conditional, std::size_t n) {
    std::vector<double> p(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            p[i * n + j] = (conditional[i * n + j] + conditional[j * n + i]) / (2.0 * static_cast<double>(n));
    return p;
}

/// KL(P || Q) over entries with P > 0.
inline double kl_divergence(std::span<const double> p, std::span<const double> q) {
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0.0) kl += p[i] * std::log(p[i] / q[i]);
    return kl;
}

/// Student-t joint distribution of a 2-D layout.
inline std::vector<double> student_t_affinities(std::span<const std::array<double, 2>> y) {
    const std::size_t n = y.size();
    std::vector<double> q(n * n, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = y[i][0] - y[j][0], dy = y[i][1] - y[j][1];
            const double w = 1.0 / (1.0 + dx * dx + dy * dy);
            q[i * n + j] = q[j * n + i] = w;
            sum += 2.0 * w;
        }
    for (double& x : q) x /= sum;
    return q;
}

/// Exact t-SNE to two dimensions for n points of dimension d (row-major).
/// Early exaggeration and the momentum switch follow `opt`; the layout is
/// re-centered every iteration.
inline Projection2D tsne(std::span<const double> data, std::size_t n, std::size_t d, const TsneOptions& opt,
                         std::uint64_t seed) {
    if (n < 5) fail(ErrorCode::TooFewPoints, "t-SNE needs at least 5 points");
    if (opt.perplexity < 2.0) fail(ErrorCode::InvalidArgument, "perplexity must be at least 2");
    if (opt.perplexity >= static_cast<double>(n))
        fail(ErrorCode::PerplexityTooLarge, "perplexity must be smaller than the number of points");

    const auto dist = squared_distances(data, n, d);
    const auto p = joint_affinities(conditional_affinities(dist, n, opt.perplexity), n);

    Projection2D out;
    out.points.resize(n);
    Rng rng = make_rng(seed, 0x75e);
    std::normal_distribution<double> normal(0.0, 1e-4);
    for (auto& pt : out.points) pt = {normal(rng), normal(rng)};

    std::vector<std::array<double, 2>> velocity(n, {0.0, 0.0}), gains(n, {1.0, 1.0}), grad(n);
    std::vector<double> num(n * n);
    for (std::size_t iter = 0; iter < opt.iterations; ++iter) {
        const double exag = iter < opt.exaggeration_iters ? opt.exaggeration : 1.0;
        const double momentum = iter < opt.momentum_switch_iter ? opt.initial_momentum : opt.final_momentum;

        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dx = out.points[i][0] - out.points[j][0], dy = out.points[i][1] - out.points[j][1];
                const double w = 1.0 / (1.0 + dx * dx + dy * dy);
                num[i * n + j] = num[j * n + i] = w;
                sum += 2.0 * w;
            }
        for (std::size_t i = 0; i < n; ++i) {
            double gx = 0.0, gy = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const double w = num[i * n + j];
                const double coeff = (exag * p[i * n + j] - w / sum) * w;
                gx += coeff * (out.points[i][0] - out.points[j][0]);
                gy += coeff * (out.points[i][1] - out.points[j][1]);
            }
            grad[i] = {4.0 * gx, 4.0 * gy};
        }
        for (std::size_t i = 0; i < n; ++i)
            for (int k = 0; k < 2; ++k) {
                auto& gain = gains[i][k];
                gain = (grad[i][k] > 0.0) != (velocity[i][k] > 0.0) ? gain + 0.2 : gain * 0.8;
                gain = std::max(gain, 0.01);
                velocity[i][k] = momentum * velocity[i][k] - opt.learning_rate * gain * grad[i][k];
                out.points[i][k] += velocity[i][k];
            }
        std::array<double, 2> mean{0.0, 0.0};
        for (const auto& pt : out.points) {
            mean[0] += pt[0];
            mean[1] += pt[1];
        }
        for (auto& pt : out.points) {
            pt[0] -= mean[0] / static_cast<double>(n);
            pt[1] -= mean[1] / static_cast<double>(n);
        }
        const std::size_t done = iter + 1;
        if ((opt.log_every && done % opt.log_every == 0) || done == opt.iterations)
            out.kl_history.emplace_back(done, kl_divergence(p, student_t_affinities(out.points)));
    }
    out.iterations = opt.iterations;
    out.final_kl = out.kl_history.empty() ? kl_divergence(p, student_t_affinities(out.points))
                                          : out.kl_history.back().second;
    return out;
}

/// t-SNE over the rows of an embedding table; keys are carried through.
inline Projection2D tsne(const EmbeddingMatrix& e, const TsneOptions& opt, std::uint64_t seed) {
    std::vector<double> data;
    data.reserve(e.size() * e.dim());
    for (std::size_t i = 0; i < e.size(); ++i) {
        auto r = e.row(i);
        data.insert(data.end(), r.begin(), r.end());
    }
    Projection2D out = tsne(data, e.size(), e.dim(), opt, seed);
    out.keys = e.keys();
    return out;
}

} // namespace patgraph

#endif
