#ifndef PATGRAPH_ANALYTICS_HPP
#define PATGRAPH_ANALYTICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "brandes.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "record.hpp"

namespace patgraph {

inline double average_degree(const Graph& g) {
    if (g.node_count() == 0) fail(ErrorCode::EmptyGraph, "average degree of an empty graph");
    return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
}

/// Mean BFS distance over unordered pairs that are connected; unreachable
/// pairs are left out.
inline double average_path_length(const Graph& g) {
    const std::size_t n = g.node_count();
    constexpr std::size_t chunks = 16;
    std::array<std::uint64_t, chunks> dist_sum{}, pair_count{};
    for_each_chunk(n, chunks, [&](std::size_t c, std::size_t b, std::size_t e) {
        constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
        std::vector<std::uint32_t> dist(n, unseen);
        std::vector<NodeId> queue;
        for (std::size_t s = b; s < e; ++s) {
            queue.assign(1, static_cast<NodeId>(s));
            dist[s] = 0;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const NodeId v = queue[head];
                for (const auto& inc : g.incidences(v)) {
                    if (dist[inc.node] != unseen) continue;
                    dist[inc.node] = dist[v] + 1;
                    dist_sum[c] += dist[inc.node];
                    ++pair_count[c];
                    queue.push_back(inc.node);
                }
            }
            for (NodeId v : queue) dist[v] = unseen;
        }
    });
    std::uint64_t total = 0, pairs = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        total += dist_sum[c];
        pairs += pair_count[c];
    }
    if (pairs == 0) fail(ErrorCode::NoConnectedPairs, "no connected node pairs");
    return static_cast<double>(total) / static_cast<double>(pairs);
}

enum class CentralityMetric { Degree, Betweenness, PageRank };

inline std::string_view to_string(CentralityMetric m) {
    switch (m) {
    case CentralityMetric::Degree: return "degree";
    case CentralityMetric::Betweenness: return "betweenness";
    case CentralityMetric::PageRank: return "pagerank";
    }
    return "?";
}

struct CentralityReport {
    CentralityMetric metric = CentralityMetric::Degree;
    std::vector<double> scores;  // indexed by node id

    /// Highest scores first; ties by ascending id. `keep` filters node ids.
    std::vector<std::pair<NodeId, double>> top_k(std::size_t k,
                                                 const std::function<bool(NodeId)>& keep = {}) const {
        std::vector<std::pair<NodeId, double>> out;
        for (NodeId v = 0; v < scores.size(); ++v)
            if (!keep || keep(v)) out.emplace_back(v, scores[v]);
        auto by_score = [](const auto& a, const auto& b) {
            return a.second != b.second ? a.second > b.second : a.first < b.first;
        };
        const std::size_t take = std::min(k, out.size());
        std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(take), out.end(), by_score);
        out.resize(take);
        return out;
    }
};

/// Raw degree, or degree / (n - 1) when normalized.
inline CentralityReport degree_centrality(const Graph& g, bool normalized = false) {
    CentralityReport r{CentralityMetric::Degree, {}};
    const std::size_t n = g.node_count();
    r.scores.resize(n);
    const double scale = normalized && n > 1 ? 1.0 / static_cast<double>(n - 1) : 1.0;
    for (NodeId v = 0; v < n; ++v) r.scores[v] = static_cast<double>(g.degree(v)) * scale;
    return r;
}

inline CentralityReport betweenness_centrality(const Graph& g) {
    return {CentralityMetric::Betweenness, node_betweenness(g)};
}

struct PageRankOptions {
    double damping = 0.85;
    double tol = 1e-9;
    int max_iter = 200;
};

/// Power iteration with every undirected edge taken as two arcs and uniform
/// teleport. Mass sitting on degree-0 nodes is teleported uniformly, so the
/// scores always sum to one.
inline CentralityReport pagerank(const Graph& g, const PageRankOptions& opt = {}) {
    const std::size_t n = g.node_count();
    if (n == 0) fail(ErrorCode::EmptyGraph, "pagerank of an empty graph");
    if (!(opt.damping >= 0.0 && opt.damping < 1.0)) fail(ErrorCode::InvalidArgument, "damping must lie in [0, 1)");
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> x(n, inv_n), next(n);
    for (int iter = 0; iter < opt.max_iter; ++iter) {
        double dangling = 0.0;
        for (NodeId v = 0; v < n; ++v)
            if (g.degree(v) == 0) dangling += x[v];
        const double base = (1.0 - opt.damping) * inv_n + opt.damping * dangling * inv_n;
        double change = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            double in = 0.0;
            for (const auto& inc : g.incidences(v)) in += x[inc.node] / static_cast<double>(g.degree(inc.node));
            next[v] = base + opt.damping * in;
            change += std::abs(next[v] - x[v]);
        }
        x.swap(next);
        if (change < opt.tol) return {CentralityMetric::PageRank, std::move(x)};
    }
    throw NotConvergedError("pagerank did not converge in " + std::to_string(opt.max_iter) + " iterations",
                            std::move(x));
}

/// Hurwitz zeta  sum_{k>=0} (q + k)^-s  for s > 1, q > 0, by Euler-Maclaurin
/// summation with a 10-term head.
inline double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0) || !(q > 0.0)) fail(ErrorCode::InvalidArgument, "hurwitz_zeta needs s > 1 and q > 0");
    constexpr int head = 10;
    double sum = 0.0;
    for (int k = 0; k < head; ++k) sum += std::pow(q + k, -s);
    const double a = q + head;
    sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    // B_2j / (2j)!
    static constexpr double bernoulli_over_factorial[] = {
        1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0, -691.0 / 1307674368000.0};
    double rising = s;                   // s (s+1) ... (s+2j-2)
    double power = std::pow(a, -s - 1);  // a^{-s-2j+1}
    for (int j = 0; j < 6; ++j) {
        sum += bernoulli_over_factorial[j] * rising * power;
        rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
        power /= a * a;
    }
    return sum;
}

struct PowerLawFit {
    double alpha = 0.0;
    std::size_t xmin = 1;
    double ks_distance = 0.0;
    std::size_t tail_size = 0;
};

/// Discrete power-law fit: for each candidate xmin, the exact discrete MLE
/// of alpha (numeric maximization of the zeta-normalized likelihood), then
/// the xmin with the smallest Kolmogorov-Smirnov distance wins.
inline PowerLawFit fit_power_law(const std::map<std::size_t, std::size_t>& hist) {
    std::vector<std::pair<std::size_t, std::size_t>> obs;  // (degree, count), degree >= 1
    std::size_t total = 0;
    for (auto [d, c] : hist)
        if (d >= 1 && c > 0) {
            obs.emplace_back(d, c);
            total += c;
        }
    if (total < 10) fail(ErrorCode::InsufficientData, "power-law fit needs at least 10 nonzero-degree observations");
    if (obs.size() < 2) fail(ErrorCode::DegenerateDistribution, "all degrees are equal");

    PowerLawFit best;
    best.ks_distance = std::numeric_limits<double>::infinity();
    std::size_t tail = total;
    for (std::size_t start = 0; start + 1 < obs.size(); tail -= obs[start].second, ++start) {
        if (tail < 10) break;
        const double xmin = static_cast<double>(obs[start].first);
        double sum_log = 0.0;
        for (std::size_t i = start; i < obs.size(); ++i)
            sum_log += static_cast<double>(obs[i].second) * std::log(static_cast<double>(obs[i].first));
        const double n_tail = static_cast<double>(tail);
        auto neg_loglik = [&](double a) { return a * sum_log + n_tail * std::log(hurwitz_zeta(a, xmin)); };
        const auto [alpha, nll] = boost::math::tools::brent_find_minima(neg_loglik, 1.0 + 1e-6, 30.0, 50);
        (void)nll;

        const double z = hurwitz_zeta(alpha, xmin);
        double model_cdf = 0.0, emp_cdf = 0.0, ks = 0.0;
        std::size_t next = start;
        for (std::size_t x = obs[start].first; x <= obs.back().first; ++x) {
            model_cdf += std::pow(static_cast<double>(x), -alpha) / z;
            if (next < obs.size() && obs[next].first == x) emp_cdf += static_cast<double>(obs[next++].second) / n_tail;
            ks = std::max(ks, std::abs(emp_cdf - model_cdf));
        }
        if (ks < best.ks_distance) best = {alpha, obs[start].first, ks, tail};
    }
    return best;
}

struct IpcFrequency {
    std::string section;
    std::size_t count = 0;
    double percentage = 0.0;
};

/// Distinct (patent, section) incidences per IPC section, most frequent
/// first; percentages are of all incidences, rounded to two decimals.
inline std::vector<IpcFrequency> ipc_frequency_table(const std::vector<PatentRecord>& records) {
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;
    for (const auto& r : records) {
        std::set<std::string> sections;
        for (const auto& c : r.ipc_codes) sections.insert(c.section_key());
        for (const auto& s : sections) ++counts[s];
        total += sections.size();
    }
    std::vector<IpcFrequency> out;
    for (const auto& [s, c] : counts)
        out.push_back({s, c, std::round(10000.0 * static_cast<double>(c) / static_cast<double>(total)) / 100.0});
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.count > b.count; });
    return out;
}

} // namespace patgraph

#endif
