#include "support.hpp"

#include <gtest/gtest.h>

using namespace grapde;
namespace ts = testing_support;

TEST(Sobolev, NormOnP2ByHand)
{
    // u = (1, 0) on P2: |grad u|^2 = 1/2 at each vertex, so
    // ||u||_{W^{1,2}}^2 = 1/2 + 1/2 + 1 = 2.
    const auto g = graphs::path(2);
    VertexFunction u(g, std::vector<double>{1.0, 0.0});
    EXPECT_NEAR(w_norm(g, u, {OperatorOrder(1, 2.0)}), std::sqrt(2.0), 1e-15);
    // m = 2: |Delta u| = 1 at both vertices, so ||u||^3 = 1 + 1 + 1 = 3.
    EXPECT_NEAR(w_norm(g, u, {OperatorOrder(2, 3.0)}), std::cbrt(3.0), 1e-15);
}

TEST(Sobolev, NormMatchesDenseOracle)
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 30; ++k) {
        const auto g = ts::random_graph(rng, 2 + k % 8);
        const auto u = ts::random_values(rng, g.size());
        const int m = 1 + k % 3;
        const double s = 2.0 + (k % 3);
        for (auto h : {Potential::h1, Potential::h2}) {
            const double lib = w_norm(g, VertexFunction(g, u), {OperatorOrder(m, s), h});
            EXPECT_NEAR(lib, ts::dense_w_norm(g, u, m, s, h), 1e-12 * lib);
        }
    }
}

TEST(Sobolev, ProductNormIsSum)
{
    const auto g = graphs::path(3);
    StatePair st(VertexFunction(g, std::vector<double>{1.0, 2.0, 0.0}), VertexFunction(g, std::vector<double>{0.0, -1.0, 1.0}));
    const SpaceSpec a{OperatorOrder(1, 3.0), Potential::h1};
    const SpaceSpec b{OperatorOrder(2, 2.0), Potential::h2};
    EXPECT_DOUBLE_EQ(product_norm(g, st, a, b), w_norm(g, st.u, a) + w_norm(g, st.v, b));
}

TEST(Sobolev, SupAndLebesgueNorms)
{
    const auto g = graphs::path(3);
    VertexFunction u(g, std::vector<double>{1.0, -3.0, 2.0});
    EXPECT_EQ(sup_norm(u), 3.0);
    EXPECT_NEAR(lr_norm(g, u, 2.0), std::sqrt(14.0), 1e-14);
}

TEST(Sobolev, EmbeddingConstantsByHand)
{
    GraphData d;
    d.vertices = {{"a", 0.5, 2.0, 4.0}, {"b", 1.5, 3.0, 1.0}};
    d.edges = {{"a", "b", 1.0}};
    WeightedGraph g(d);
    const auto k = embedding_constants(g, 2.0, 3.0);
    EXPECT_DOUBLE_EQ(k.volume, 2.0);
    EXPECT_DOUBLE_EQ(k.b, 1.0);                       // (1/(0.5*2))^{1/2}
    EXPECT_NEAR(k.d, std::cbrt(2.0), 1e-15);           // (1/(0.5*1))^{1/3}
    EXPECT_NEAR(k.K1, std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(k.K2, std::cbrt(2.0) * std::cbrt(2.0), 1e-14);
    EXPECT_THROW(embedding_constants(g, 1.5, 2.0), InputError);
}

TEST(Sobolev, EmbeddingHoldsOnRandomFunctions)
{
    std::mt19937_64 rng(12);
    for (int k = 0; k < 20; ++k) {
        const auto g = ts::random_graph(rng, 2 + k % 8);
        const double p = 2.0 + (k % 3);
        const auto K = embedding_constants(g, p, p);
        for (int j = 0; j < 50; ++j) {
            const auto u = ts::random_values(rng, g.size());
            EXPECT_LE(sup_norm(VertexFunction(g, u)), K.b * ts::dense_w_norm(g, u, 1 + j % 3, p) * (1 + 1e-14));
        }
    }
}
