#ifndef PATGRAPH_TESTS_SUPPORT_HPP
#define PATGRAPH_TESTS_SUPPORT_HPP

// Test-side generators and brute-force oracles. None of these reuse library
// algorithms beyond the Graph container.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <patgraph/graph.hpp>
#include <patgraph/hetero_graph.hpp>
#include <patgraph/record.hpp>

namespace testsupport {

using patgraph::Graph;
using patgraph::NodeId;

inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (coin(rng)) g.add_edge(i, j);
    return g;
}

/// Random graph with exactly m edges.
inline Graph random_graph_m(std::size_t n, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    Graph g(n);
    while (g.edge_count() < m) {
        NodeId a = pick(rng), b = pick(rng);
        if (a != b) g.add_edge(a, b);
    }
    return g;
}

/// Two triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline Graph two_triangles() {
    const std::vector<std::pair<NodeId, NodeId>> e{{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}};
    return Graph::from_edges(6, e);
}

struct Planted {
    Graph graph;
    std::vector<int> labels;
};

inline Planted planted_partition(std::size_t blocks, std::size_t block_size, double p_in, double p_out,
                                 std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t n = blocks * block_size;
    Planted out{Graph(n), std::vector<int>(n)};
    for (std::size_t i = 0; i < n; ++i) out.labels[i] = static_cast<int>(i / block_size);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (u(rng) < (out.labels[i] == out.labels[j] ? p_in : p_out)) out.graph.add_edge(i, j);
    return out;
}

/// Two k-cliques {0..k-1}, {k..2k-1} joined by the edge (k-1, k).
inline Graph two_cliques(std::size_t k) {
    Graph g(2 * k);
    for (std::size_t b = 0; b < 2; ++b)
        for (NodeId i = 0; i < k; ++i)
            for (NodeId j = i + 1; j < k; ++j) g.add_edge(static_cast<NodeId>(b * k + i), static_cast<NodeId>(b * k + j));
    g.add_edge(static_cast<NodeId>(k - 1), static_cast<NodeId>(k));
    return g;
}

inline constexpr int unreachable = std::numeric_limits<int>::max() / 4;

inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, unreachable));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

struct PathCounts {
    std::vector<double> node;
    std::vector<double> edge;
};

/// Enumerates every shortest path of every unordered pair explicitly and
/// credits each interior node / traversed edge with 1/#paths.
inline PathCounts enumerate_betweenness(const Graph& g) {
    const std::size_t n = g.node_count();
    const auto d = floyd_warshall(g);
    PathCounts out{std::vector<double>(n, 0.0), std::vector<double>(g.edge_count(), 0.0)};
    std::vector<std::vector<NodeId>> paths;
    std::vector<NodeId> cur;
    std::function<void(NodeId, NodeId)> dfs = [&](NodeId v, NodeId t) {
        if (v == t) {
            paths.push_back(cur);
            return;
        }
        for (const auto& inc : g.incidences(v))
            if (d[inc.node][t] == d[v][t] - 1) {
                cur.push_back(inc.node);
                dfs(inc.node, t);
                cur.pop_back();
            }
    };
    for (NodeId s = 0; s < n; ++s)
        for (NodeId t = s + 1; t < n; ++t) {
            if (d[s][t] >= unreachable) continue;
            paths.clear();
            cur.assign(1, s);
            dfs(s, t);
            const double w = 1.0 / static_cast<double>(paths.size());
            for (const auto& p : paths) {
                for (std::size_t i = 1; i + 1 < p.size(); ++i) out.node[p[i]] += w;
                for (std::size_t i = 0; i + 1 < p.size(); ++i) out.edge[*g.find_edge(p[i], p[i + 1])] += w;
            }
        }
    return out;
}

/// Q = 1/(2m) * sum_{ij} [A_ij - k_i k_j / (2m)] delta(c_i, c_j).
inline double modularity_direct(const Graph& g, const std::vector<std::uint32_t>& c) {
    const std::size_t n = g.node_count();
    const double two_m = 2.0 * static_cast<double>(g.edge_count());
    double q = 0.0;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j) {
            if (c[i] != c[j]) continue;
            const double a = g.has_edge(i, j) ? 1.0 : 0.0;
            q += a - static_cast<double>(g.degree(i)) * static_cast<double>(g.degree(j)) / two_m;
        }
    return q / two_m;
}

template <class A, class B>
double adjusted_rand_index(const std::vector<A>& x, const std::vector<B>& y) {
    std::map<std::pair<A, B>, double> joint;
    std::map<A, double> rows;
    std::map<B, double> cols;
    for (std::size_t i = 0; i < x.size(); ++i) {
        joint[{x[i], y[i]}] += 1;
        rows[x[i]] += 1;
        cols[y[i]] += 1;
    }
    auto c2 = [](double v) { return v * (v - 1) / 2; };
    double index = 0, a = 0, b = 0;
    for (const auto& [k, v] : joint) index += c2(v);
    for (const auto& [k, v] : rows) a += c2(v);
    for (const auto& [k, v] : cols) b += c2(v);
    const double expected = a * b / c2(static_cast<double>(x.size()));
    const double max_index = (a + b) / 2;
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

inline double cosine(std::span<const double> a, std::span<const double> b) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    return ab / std::sqrt(aa * bb);
}

/// Mean silhouette of 2-D points under integer labels.
inline double silhouette(const std::vector<std::array<double, 2>>& pts, const std::vector<int>& labels) {
    const std::size_t n = pts.size();
    int k = 0;
    for (int l : labels) k = std::max(k, l + 1);
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> sum(static_cast<std::size_t>(k), 0.0), cnt(static_cast<std::size_t>(k), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1];
            sum[static_cast<std::size_t>(labels[j])] += std::sqrt(dx * dx + dy * dy);
            cnt[static_cast<std::size_t>(labels[j])] += 1;
        }
        const auto own = static_cast<std::size_t>(labels[i]);
        const double a = cnt[own] > 0 ? sum[own] / cnt[own] : 0.0;
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < sum.size(); ++c)
            if (c != own && cnt[c] > 0) b = std::min(b, sum[c] / cnt[c]);
        total += cnt[own] > 0 ? (b - a) / std::max(a, b) : 0.0;
    }
    return total / static_cast<double>(n);
}

/// Discrete power law P(x) ~ x^-alpha on x >= xmin by inverse CDF over a
/// truncated support (tail mass beyond `cap` is negligible for alpha 2.5).
inline std::vector<std::size_t> sample_power_law(double alpha, std::size_t xmin, std::size_t count,
                                                 std::uint64_t seed, std::size_t cap = 1000000) {
    std::vector<double> cdf;
    double total = 0;
    for (std::size_t x = xmin; x <= cap; ++x) {
        total += std::pow(static_cast<double>(x), -alpha);
        cdf.push_back(total);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, total);
    std::vector<std::size_t> out(count);
    for (auto& v : out) {
        const double r = u(rng);
        v = xmin + static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
    }
    return out;
}

/// Synthetic patent corpus: `blocks` groups of `per_block` patents, each
/// group sharing one exclusive IPC subclass (plus a per-patent group code).
inline std::vector<patgraph::PatentRecord> block_records(std::size_t blocks, std::size_t per_block) {
    std::vector<patgraph::PatentRecord> out;
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t i = 0; i < per_block; ++i) {
            patgraph::PatentRecord r;
            r.registration_id = "P" + std::to_string(b) + "-" + std::to_string(i);
            patgraph::IpcCode code;
            code.section = static_cast<char>('A' + b % 8);
            code.class_digits = (b < 10 ? "0" : "") + std::to_string(b);
            code.subclass_letter = 'K';
            code.group = std::to_string(i + 1) + "/00";
            r.ipc_codes.push_back(code);
            out.push_back(std::move(r));
        }
    return out;
}

/// Heavy-tailed bipartite-style graph with exactly n nodes and m edges:
/// preferential attachment of "patent" nodes onto a smaller hub set, plus a
/// block of isolated nodes.
inline Graph heavy_tailed_graph(std::size_t n, std::size_t m, std::size_t isolated, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t hubs = n / 10;
    const std::size_t leaves = n - hubs - isolated;
    Graph g(n);
    std::vector<NodeId> targets;  // hub ids repeated by degree + 1
    for (NodeId h = 0; h < hubs; ++h) targets.push_back(h);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto attach = [&](NodeId leaf) {
        for (int tries = 0; tries < 64; ++tries) {
            const NodeId h = targets[static_cast<std::size_t>(u(rng) * static_cast<double>(targets.size()))];
            if (!g.has_edge(leaf, h)) {
                g.add_edge(leaf, h);
                targets.push_back(h);
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < leaves; ++i) attach(static_cast<NodeId>(hubs + i));
    std::uniform_int_distribution<std::size_t> pick_leaf(0, leaves - 1);
    while (g.edge_count() < m) attach(static_cast<NodeId>(hubs + pick_leaf(rng)));
    return g;
}

} // namespace testsupport

#endif
