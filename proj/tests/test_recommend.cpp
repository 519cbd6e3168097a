#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include <patgraph/recommend.hpp>

#include "checks.hpp"
#include "support.hpp"

using namespace patgraph;

namespace {

PatentRecord patent(const std::string& id, const std::vector<std::string>& ipcs) {
    PatentRecord r;
    r.registration_id = id;
    for (const auto& s : ipcs) r.ipc_codes.push_back(parse_ipc(s + " 1/00"));
    return r;
}

EmbeddingMatrix random_matrix(std::size_t n, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    EmbeddingMatrix e(dim);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(dim);
        for (double& x : row) x = normal(rng);
        e.add_row("n" + std::to_string(i), row);
    }
    return e;
}

} // namespace

TEST(TopK, IdenticalAndOrthogonal) {
    EmbeddingMatrix e(2);
    e.add_row("q", std::vector<double>{1, 0});
    e.add_row("same", std::vector<double>{3, 0});
    e.add_row("ortho", std::vector<double>{0, 2});
    const auto r = top_k_similar(e, "q", 5);
    ASSERT_EQ(r.neighbors.size(), 2u);
    EXPECT_EQ(r.neighbors[0].key, "same");
    EXPECT_DOUBLE_EQ(r.neighbors[0].score, 1.0);
    EXPECT_EQ(r.neighbors[1].key, "ortho");
    EXPECT_EQ(r.neighbors[1].score, 0.0);
}

TEST(TopK, MatchesBruteForce) {
    const auto e = random_matrix(200, 8, 3);
    for (std::size_t q = 0; q < 200; q += 17) {
        const std::string query = e.key(q);
        std::vector<std::pair<double, std::string>> all;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != q) all.emplace_back(-testsupport::cosine(e.row(q), e.row(i)), e.key(i));
        std::sort(all.begin(), all.end());
        const auto r = top_k_similar(e, query, 10);
        ASSERT_EQ(r.neighbors.size(), 10u);
        for (std::size_t i = 0; i < 10; ++i) {
            EXPECT_EQ(r.neighbors[i].key, all[i].second);
            EXPECT_NEAR(r.neighbors[i].score, -all[i].first, 1e-12);
        }
    }
}

TEST(TopK, TiesBrokenByKey) {
    EmbeddingMatrix e(2);
    e.add_row("q", std::vector<double>{1, 1});
    for (const char* k : {"d", "b", "c", "a"}) e.add_row(k, std::vector<double>{2, 2});
    const auto r = top_k_similar(e, "q", 3);
    ASSERT_EQ(r.neighbors.size(), 3u);
    EXPECT_EQ(r.neighbors[0].key, "a");
    EXPECT_EQ(r.neighbors[1].key, "b");
    EXPECT_EQ(r.neighbors[2].key, "c");
}

TEST(TopK, PermutationStable) {
    const auto e = random_matrix(60, 5, 8);
    std::vector<std::size_t> order(60);
    for (std::size_t i = 0; i < 60; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), std::mt19937_64(2));
    EmbeddingMatrix shuffled(5);
    for (auto i : order) shuffled.add_row(e.key(i), e.row(i));
    for (std::size_t q = 0; q < 60; q += 7) {
        const auto a = top_k_similar(e, e.key(q), 8), b = top_k_similar(shuffled, e.key(q), 8);
        ASSERT_EQ(a.neighbors.size(), b.neighbors.size());
        for (std::size_t i = 0; i < a.neighbors.size(); ++i) {
            EXPECT_EQ(a.neighbors[i].key, b.neighbors[i].key);
            EXPECT_EQ(a.neighbors[i].score, b.neighbors[i].score);
        }
    }
}

TEST(TopK, ZeroVectorsAndErrors) {
    EmbeddingMatrix e(2);
    e.add_row("q", std::vector<double>{1, 0});
    e.add_row("zero", std::vector<double>{0, 0});
    e.add_row("x", std::vector<double>{1, 1});
    const auto r = top_k_similar(e, "q", 5);
    ASSERT_EQ(r.neighbors.size(), 1u);
    EXPECT_EQ(r.warnings.size(), 1u);
    auto code_of = [&](const std::string& q, std::size_t k) {
        try {
            top_k_similar(e, q, k);
        } catch (const Error& err) {
            return err.code();
        }
        return ErrorCode::Io;
    };
    EXPECT_EQ(code_of("missing", 1), ErrorCode::UnknownKey);
    EXPECT_EQ(code_of("zero", 1), ErrorCode::ZeroVector);
    EXPECT_EQ(code_of("q", 0), ErrorCode::InvalidArgument);
}

TEST(Explain, SharedSubclassesAndJaccard) {
    const auto g = build_graph({patent("a", {"A61K"}), patent("b", {"A61K"}), patent("c", {"B82Y"}),
                                patent("d", {"A61K", "B82Y"}), patent("e", {"A61K", "G01N"}), patent("f", {})});
    auto ex = explain_similarity(g, "a", "b");
    EXPECT_EQ(ex.shared, std::vector<std::string>{"A61K"});
    EXPECT_EQ(ex.jaccard, 1.0);
    ex = explain_similarity(g, "a", "c");
    EXPECT_TRUE(ex.shared.empty());
    EXPECT_EQ(ex.jaccard, 0.0);
    EXPECT_DOUBLE_EQ(explain_similarity(g, "d", "e").jaccard, 1.0 / 3.0);
    EXPECT_EQ(explain_similarity(g, "f", "f").jaccard, 0.0);
    EXPECT_THROW(explain_similarity(g, "a", "nope"), Error);
    try {
        explain_similarity(g, "a", "A61K");
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::KindMismatch);
    }
}

TEST(Recommend, OnlyPatentsWithExplanations) {
    const auto g = build_graph({patent("a", {"A61K"}), patent("b", {"A61K"}), patent("c", {"B82Y"})});
    EmbeddingMatrix e(2);
    e.add_row("a", std::vector<double>{1, 0});
    e.add_row("A61K", std::vector<double>{1, 0});
    e.add_row("b", std::vector<double>{1, 0.1});
    e.add_row("c", std::vector<double>{0, 1});
    e.add_row("B82Y", std::vector<double>{0, 1});
    const auto r = recommend(g, e, "a", 5);
    ASSERT_EQ(r.neighbors.size(), 2u);
    EXPECT_EQ(r.neighbors[0].key, "b");
    EXPECT_EQ(r.neighbors[0].explanation.shared, std::vector<std::string>{"A61K"});
    EXPECT_EQ(r.neighbors[1].key, "c");
    const auto j = to_json(r);
    EXPECT_EQ(j["query"], "a");
    EXPECT_EQ(j["neighbors"][0]["shared_ipc"][0], "A61K");
    EXPECT_THROW(recommend(g, e, "A61K", 2), Error);
}

TEST(Evaluate, OneHotOracleIsPerfect) {
    const auto g = testsupport::block_graph();
    EXPECT_EQ(evaluate_recommender(g, testsupport::one_hot_ipc(g), 5), 1.0);
    EXPECT_THROW(evaluate_recommender(g, testsupport::one_hot_ipc(g), 0), Error);
}

TEST(Evaluate, RandomEmbeddingsNearBlockShare) {
    const auto g = testsupport::block_graph();
    std::mt19937_64 rng(4);
    std::normal_distribution<double> normal;
    double total = 0;
    const int trials = 5;
    for (int t = 0; t < trials; ++t) {
        EmbeddingMatrix e(16);
        for (const auto& n : g.nodes()) {
            std::vector<double> row(16);
            for (double& x : row) x = normal(rng);
            e.add_row(n.key, row);
        }
        total += evaluate_recommender(g, e, 5);
    }
    // Each other patent shares the subclass with probability 29/299.
    EXPECT_NEAR(total / trials, 29.0 / 299.0, 0.03);
}

TEST(Evaluate, Node2VecOnBlockGraph) {
    const auto g = testsupport::block_graph();
    EXPECT_GE(testsupport::node2vec_block_precision(g, 1), 0.8);
}
