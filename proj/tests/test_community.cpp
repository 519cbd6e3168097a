#include <chrono>
#include <random>

#include <gtest/gtest.h>

#include <patgraph/brandes.hpp>
#include <patgraph/community.hpp>

#include "support.hpp"

using namespace patgraph;

TEST(Modularity, AllInOneIsZero) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Graph g = testsupport::erdos_renyi(15, 0.3, s);
        if (g.edge_count() == 0) continue;
        EXPECT_EQ(modularity(g, std::vector<std::uint32_t>(15, 0)), 0.0);
    }
}

TEST(Modularity, TwoTriangles) {
    EXPECT_NEAR(modularity(testsupport::two_triangles(), std::vector<std::uint32_t>{0, 0, 0, 1, 1, 1}), 5.0 / 14.0,
                1e-15);
}

TEST(Modularity, Errors) {
    try {
        modularity(testsupport::two_triangles(), std::vector<std::uint32_t>{0, 0});
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UncoveredNode);
    }
    try {
        modularity(Graph(3), std::vector<std::uint32_t>{0, 1, 2});
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyGraph);
    }
}

TEST(Modularity, MatchesDirectSummation) {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + rng() % 20;
        const Graph g = testsupport::erdos_renyi(n, 0.25, rng());
        if (g.edge_count() == 0) continue;
        std::vector<std::uint32_t> c(n);
        const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng() % 5);
        for (auto& x : c) x = static_cast<std::uint32_t>(rng() % k);
        const Partition p = make_partition(c);
        const double q = modularity(g, p);
        EXPECT_NEAR(q, testsupport::modularity_direct(g, c), 1e-12);
        EXPECT_GE(q, -0.5);
        EXPECT_LE(q, 1.0);
    }
}

TEST(MakePartition, DenseFirstAppearance) {
    const Partition p = make_partition(std::vector<std::uint32_t>{7, 3, 7, 9});
    EXPECT_EQ(p.assignment, (std::vector<std::uint32_t>{0, 1, 0, 2}));
    EXPECT_EQ(p.community_count, 3u);
    EXPECT_EQ(p.non_singleton_count(), 1u);
}

TEST(GirvanNewman, TwoTrianglesBridgeFirst) {
    const Graph g = testsupport::two_triangles();
    GirvanNewman engine(g);
    EdgeId first = 0;
    EXPECT_TRUE(engine.step(&first));
    EXPECT_EQ(g.edge(first), (EdgeEnds{2, 3}));

    const auto r = girvan_newman(g);
    EXPECT_NEAR(r.best.modularity, 5.0 / 14.0, 1e-12);
    EXPECT_EQ(r.best.community_count, 2u);
    EXPECT_EQ(r.best.assignment, (std::vector<std::uint32_t>{0, 0, 0, 1, 1, 1}));
    EXPECT_EQ(r.dendrogram.removals.front(), (EdgeEnds{2, 3}));
    EXPECT_EQ(r.dendrogram.removals.size(), g.edge_count());
}

TEST(GirvanNewman, SingleTriangle) {
    const std::vector<std::pair<NodeId, NodeId>> tri{{0, 1}, {1, 2}, {0, 2}};
    const auto r = girvan_newman(Graph::from_edges(3, tri));
    EXPECT_EQ(r.best.modularity, 0.0);
    EXPECT_EQ(r.best.community_count, 1u);
}

TEST(GirvanNewman, DendrogramInvariants) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Graph g = testsupport::erdos_renyi(20, 0.2, 500 + s);
        if (g.edge_count() == 0) continue;
        const auto r = girvan_newman(g);
        EXPECT_LE(r.dendrogram.removals.size(), g.edge_count());
        for (std::size_t i = 1; i < r.dendrogram.levels.size(); ++i) {
            EXPECT_GT(r.dendrogram.levels[i].community_count, r.dendrogram.levels[i - 1].community_count);
            EXPECT_GT(r.dendrogram.levels[i].removals, r.dendrogram.levels[i - 1].removals);
        }
        EXPECT_GE(r.best.modularity, r.dendrogram.levels.front().modularity);
        const Partition again = r.dendrogram.partition_at(g, r.best_level);
        EXPECT_EQ(again.assignment, r.best.assignment);
        EXPECT_NEAR(again.modularity, r.best.modularity, 1e-15);
    }
}

TEST(GirvanNewman, EdgeCountDropsByOne) {
    const Graph g = testsupport::erdos_renyi(15, 0.3, 8);
    GirvanNewman engine(g);
    while (engine.remaining_edges() > 0) {
        const std::size_t before = engine.remaining_edges();
        engine.step();
        EXPECT_EQ(engine.remaining_edges(), before - 1);
        EXPECT_EQ(engine.current_graph().edge_count(), before - 1);
    }
}

TEST(GirvanNewman, LocalRecomputationMatchesFull) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Graph g = testsupport::erdos_renyi(4 + s % 9, 0.35, 600 + s);
        GirvanNewman engine(g);
        while (engine.remaining_edges() > 0) {
            engine.step();
            const Graph h = engine.current_graph();
            const auto full = edge_betweenness(h);
            for (EdgeId e = 0; e < h.edge_count(); ++e) {
                const EdgeId orig = *g.find_edge(h.edge(e).u, h.edge(e).v);
                ASSERT_NEAR(engine.betweenness(orig), full[e], 1e-9);
            }
        }
    }
}

TEST(GirvanNewman, Deterministic) {
    const Graph g = testsupport::erdos_renyi(30, 0.15, 77);
    const auto a = girvan_newman(g), b = girvan_newman(g);
    EXPECT_EQ(a.dendrogram.removals, b.dendrogram.removals);
    EXPECT_EQ(a.best.assignment, b.best.assignment);
}

TEST(GirvanNewman, PlantedPartitionRecovered) {
    int good = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto planted = testsupport::planted_partition(4, 16, 0.9, 0.02, 700 + s);
        const auto r = girvan_newman(planted.graph);
        if (testsupport::adjusted_rand_index(planted.labels, r.best.assignment) >= 0.9) ++good;
    }
    EXPECT_GE(good, 9);
}

TEST(GirvanNewman, PlateauAndMaxRemovals) {
    const auto planted = testsupport::planted_partition(4, 16, 0.9, 0.02, 1);
    const auto capped = girvan_newman(planted.graph, {10, std::nullopt});
    EXPECT_EQ(capped.dendrogram.removals.size(), 10u);
    const auto full = girvan_newman(planted.graph);
    const auto early = girvan_newman(planted.graph, {0, 5});
    EXPECT_LT(early.dendrogram.removals.size(), full.dendrogram.removals.size());
    EXPECT_NEAR(early.best.modularity, full.best.modularity, 1e-12);
}

TEST(GirvanNewman, IsolatedNodesAreSingletons) {
    Graph g(5);
    g.add_edge(0, 1);
    const auto r = girvan_newman(g);
    EXPECT_EQ(r.dendrogram.levels.front().community_count, 4u);
    EXPECT_EQ(r.best.community_count, 4u);
}

TEST(GirvanNewman, EmptyEdgeGraph) {
    try {
        girvan_newman(Graph(3));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyGraph);
    }
}
