#include <cmath>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include <patgraph/analytics.hpp>
#include <patgraph/report.hpp>

#include "support.hpp"

using namespace patgraph;
using testsupport::erdos_renyi;

namespace {

Graph path3() {
    const std::vector<std::pair<NodeId, NodeId>> e{{0, 1}, {1, 2}};
    return Graph::from_edges(3, e);
}

Graph star(std::size_t leaves) {
    Graph g(leaves + 1);
    for (NodeId i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

Graph cycle(std::size_t n) {
    Graph g(n);
    for (NodeId i = 0; i < n; ++i) g.add_edge(i, static_cast<NodeId>((i + 1) % n));
    return g;
}

/// Dense power iteration with explicit uniform handling of zero-degree
/// columns, run for a fixed iteration count.
std::vector<double> dense_pagerank(const Graph& g, double d, int iters) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (NodeId j = 0; j < n; ++j)
        for (NodeId i = 0; i < n; ++i) {
            if (g.degree(j) == 0) m[i][j] = 1.0 / static_cast<double>(n);
            else if (g.has_edge(i, j)) m[i][j] = 1.0 / static_cast<double>(g.degree(j));
        }
    std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
    for (int t = 0; t < iters; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = (1.0 - d) / static_cast<double>(n);
            for (std::size_t j = 0; j < n; ++j) y[i] += d * m[i][j] * x[j];
        }
        x = y;
    }
    return x;
}

} // namespace

TEST(AverageDegree, Examples) {
    const std::vector<std::pair<NodeId, NodeId>> tri{{0, 1}, {1, 2}, {0, 2}};
    EXPECT_DOUBLE_EQ(average_degree(Graph::from_edges(3, tri)), 2.0);
    EXPECT_DOUBLE_EQ(average_degree(Graph(1)), 0.0);
    EXPECT_THROW(average_degree(Graph()), Error);
    EXPECT_NEAR(2.0 * 8928 / 6443, 2.7714, 1e-4);
}

TEST(AveragePathLength, Examples) {
    EXPECT_DOUBLE_EQ(average_path_length(path3()), 4.0 / 3.0);
    const std::vector<std::pair<NodeId, NodeId>> two{{0, 1}, {2, 3}};
    EXPECT_DOUBLE_EQ(average_path_length(Graph::from_edges(4, two)), 1.0);
    try {
        average_path_length(Graph(3));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoConnectedPairs);
    }
}

TEST(AveragePathLength, MatchesFloydWarshall) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const Graph g = erdos_renyi(2 + s % 11, 0.3, 200 + s);
        const auto d = testsupport::floyd_warshall(g);
        double total = 0;
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < g.node_count(); ++i)
            for (std::size_t j = i + 1; j < g.node_count(); ++j)
                if (d[i][j] < testsupport::unreachable) {
                    total += d[i][j];
                    ++pairs;
                }
        if (pairs == 0) {
            EXPECT_THROW(average_path_length(g), Error);
            continue;
        }
        EXPECT_NEAR(average_path_length(g), total / static_cast<double>(pairs), 1e-12);
    }
}

TEST(DegreeCentrality, RawAndNormalized) {
    const auto r = degree_centrality(star(4));
    EXPECT_EQ(r.scores[0], 4.0);
    EXPECT_EQ(r.top_k(1).at(0).first, 0u);
    EXPECT_DOUBLE_EQ(degree_centrality(star(4), true).scores[0], 1.0);
    EXPECT_TRUE(degree_centrality(Graph()).scores.empty());
}

TEST(DegreeCentrality, ArgmaxInvariantUnderRescaling) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Graph g = erdos_renyi(25, 0.15, s);
        EXPECT_EQ(degree_centrality(g).top_k(1).at(0).first, degree_centrality(g, true).top_k(1).at(0).first);
    }
}

TEST(Betweenness, Examples) {
    const auto p = betweenness_centrality(path3()).scores;
    EXPECT_DOUBLE_EQ(p[1], 1.0);
    EXPECT_DOUBLE_EQ(p[0], 0.0);
    EXPECT_DOUBLE_EQ(p[2], 0.0);
    EXPECT_DOUBLE_EQ(betweenness_centrality(star(4)).scores[0], 6.0);
}

TEST(EdgeBetweenness, Examples) {
    const Graph tt = testsupport::two_triangles();
    const auto eb = edge_betweenness(tt);
    const EdgeId bridge = *tt.find_edge(2, 3);
    EXPECT_DOUBLE_EQ(eb[bridge], 9.0);
    for (EdgeId e = 0; e < eb.size(); ++e) {
        if (e != bridge) {
            EXPECT_LT(eb[e], eb[bridge]);
        }
    }
    const std::vector<std::pair<NodeId, NodeId>> single{{0, 1}};
    EXPECT_DOUBLE_EQ(edge_betweenness(Graph::from_edges(2, single))[0], 1.0);
    const auto tri = edge_betweenness(cycle(3));
    EXPECT_DOUBLE_EQ(tri[0], tri[1]);
    EXPECT_DOUBLE_EQ(tri[1], tri[2]);
}

TEST(Betweenness, MatchesPathEnumeration) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const Graph g = erdos_renyi(2 + s % 11, 0.3, 300 + s);
        const auto oracle = testsupport::enumerate_betweenness(g);
        const auto nb = node_betweenness(g);
        const auto eb = edge_betweenness(g);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            EXPECT_NEAR(nb[v], oracle.node[v], 1e-9);
            EXPECT_GE(nb[v], 0.0);
        }
        for (EdgeId e = 0; e < g.edge_count(); ++e) EXPECT_NEAR(eb[e], oracle.edge[e], 1e-9);
    }
}

TEST(Betweenness, IndependentOfWorkerCount) {
    const Graph g = erdos_renyi(120, 0.05, 9);
    setenv("PATGRAPH_THREADS", "1", 1);
    const auto one = node_betweenness(g);
    setenv("PATGRAPH_THREADS", "4", 1);
    const auto four = node_betweenness(g);
    unsetenv("PATGRAPH_THREADS");
    EXPECT_EQ(one, four);
}

TEST(PageRank, Examples) {
    for (double s : pagerank(cycle(5)).scores) EXPECT_NEAR(s, 0.2, 1e-12);
    EXPECT_DOUBLE_EQ(pagerank(Graph(1)).scores[0], 1.0);
    const auto pr = pagerank(star(3)).scores;
    const auto oracle = dense_pagerank(star(3), 0.85, 1000);
    for (std::size_t i = 0; i < pr.size(); ++i) EXPECT_NEAR(pr[i], oracle[i], 1e-8);
    EXPECT_THROW(pagerank(Graph()), Error);
}

TEST(PageRank, FixedPointAndNormalization) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        Graph g = erdos_renyi(40, 0.08, 400 + s);
        const PageRankOptions opt;
        const auto x = pagerank(g, opt).scores;
        EXPECT_NEAR(std::accumulate(x.begin(), x.end(), 0.0), 1.0, 1e-9);
        const auto oracle = dense_pagerank(g, opt.damping, 300);
        const double n = static_cast<double>(g.node_count());
        double dangling = 0.0;
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (g.degree(v) == 0) dangling += x[v];
        for (NodeId i = 0; i < g.node_count(); ++i) {
            double px = dangling / n;
            for (const auto& inc : g.incidences(i)) px += x[inc.node] / static_cast<double>(g.degree(inc.node));
            EXPECT_LT(std::abs(x[i] - opt.damping * px - (1.0 - opt.damping) / n), 10 * opt.tol);
            EXPECT_NEAR(x[i], oracle[i], 1e-8);
        }
    }
}

TEST(PageRank, NotConvergedCarriesIterate) {
    try {
        pagerank(erdos_renyi(30, 0.2, 1), {0.85, 1e-300, 3});
        ADD_FAILURE();
    } catch (const NotConvergedError& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotConverged);
        EXPECT_EQ(e.last_iterate().size(), 30u);
    }
}

TEST(PowerLaw, RecoversAlpha) {
    const auto samples = testsupport::sample_power_law(2.5, 1, 10000, 42);
    std::map<std::size_t, std::size_t> hist;
    for (auto s : samples) ++hist[s];
    const auto fit = fit_power_law(hist);
    EXPECT_GE(fit.alpha, 2.4);
    EXPECT_LE(fit.alpha, 2.6);
    EXPECT_GE(fit.ks_distance, 0.0);
    EXPECT_LE(fit.ks_distance, 1.0);
    EXPECT_GE(fit.tail_size, 10u);
}

TEST(PowerLaw, Errors) {
    try {
        fit_power_law({{3, 50}});
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateDistribution);
    }
    try {
        fit_power_law({{1, 2}, {2, 3}});
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientData);
    }
}

TEST(PowerLaw, HurwitzZeta) {
    EXPECT_NEAR(hurwitz_zeta(2.0, 1.0), M_PI * M_PI / 6.0, 1e-12);
    EXPECT_NEAR(hurwitz_zeta(3.0, 2.0), 1.2020569031595942 - 1.0, 1e-12);
    EXPECT_NEAR(hurwitz_zeta(2.5, 1.0), 1.3414872572509171, 1e-12);
}

TEST(IpcFrequency, HandCount) {
    PatentRecord a, b;
    a.ipc_codes = {parse_ipc("A61K 1/00")};
    b.ipc_codes = {parse_ipc("A61B 1/00"), parse_ipc("H04M 1/00")};
    const auto t = ipc_frequency_table({a, b});
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[0].section, "A");
    EXPECT_EQ(t[0].count, 2u);
    EXPECT_DOUBLE_EQ(t[0].percentage, 66.67);
    EXPECT_EQ(t[1].section, "H");
    EXPECT_DOUBLE_EQ(t[1].percentage, 33.33);
    EXPECT_TRUE(ipc_frequency_table({}).empty());
}

TEST(Report, StatsSummaryAndNote) {
    const auto s = compute_stats(path3());
    EXPECT_EQ(s.n, 3u);
    EXPECT_EQ(s.m, 2u);
    EXPECT_DOUBLE_EQ(*s.avg_path_length, 4.0 / 3.0);
    const auto j = to_json(s);
    for (const char* key : {"n", "m", "avg_degree", "avg_path_length", "isolated", "powerlaw_alpha"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_TRUE(j["powerlaw_alpha"].is_null());
    std::ostringstream out;
    write_stats_table(s, out);
    EXPECT_NE(out.str().find("2.07"), std::string::npos);
    EXPECT_NE(out.str().find("2.7714"), std::string::npos);
}

TEST(Report, CentralityCsv) {
    HeteroGraph g;
    const auto p = g.add_node(NodeKind::Patent, "p1");
    g.add_edge(p, g.add_node(NodeKind::Ipc, "A61K"));
    g.add_edge(p, g.add_node(NodeKind::Institution, "U, Inc"));
    std::ostringstream out;
    write_centrality_csv(g, degree_centrality(g.topology()), out);
    EXPECT_EQ(out.str(), "key,kind,score\np1,patent,2\nA61K,ipc,1\n\"U, Inc\",institution,1\n");
}
