#include "grapde/graph.hpp"

#include <gtest/gtest.h>

using namespace grapde;

namespace {

GraphData triangle()
{
    GraphData d;
    d.vertices = {{"a", 1.0, 1.0, 2.0}, {"b", 2.0, 1.0, 1.0}, {"c", 0.5, 3.0, 1.0}};
    d.edges = {{"a", "b", 1.0}, {"b", "c", 2.0}, {"a", "c", 0.5}};
    return d;
}

} // namespace

TEST(Graph, BuildsAdjacencyAndMeasures)
{
    WeightedGraph g(triangle());
    EXPECT_EQ(g.size(), 3u);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_DOUBLE_EQ(g.mu(1), 2.0);
    EXPECT_DOUBLE_EQ(g.degree(0), 1.5);
    EXPECT_DOUBLE_EQ(g.degree(1), 3.0);
    EXPECT_DOUBLE_EQ(g.mu_min(), 0.5);
    EXPECT_DOUBLE_EQ(g.potential_min(Potential::h1), 1.0);
    EXPECT_DOUBLE_EQ(g.potential_min(Potential::h2), 1.0);
    EXPECT_EQ(*g.index_of("c"), 2u);
    EXPECT_FALSE(g.index_of("z"));
    EXPECT_TRUE(g.warnings().empty());
}

TEST(Graph, IntegralAndVolume)
{
    WeightedGraph g(triangle());
    VertexFunction f(g, std::vector<double>{1.0, -2.0, 4.0});
    EXPECT_DOUBLE_EQ(integral(g, f), 1.0 - 4.0 + 2.0);
    EXPECT_DOUBLE_EQ(total_measure(g), 3.5);
}

TEST(Graph, StructuralErrorsThrow)
{
    auto d = triangle();
    d.edges.push_back({"a", "zz", 1.0});
    EXPECT_THROW(WeightedGraph{d}, InputError);

    d = triangle();
    d.edges.push_back({"a", "a", 1.0});
    EXPECT_THROW(WeightedGraph{d}, InputError);

    d = triangle();
    d.vertices.push_back({"a", 1.0, 1.0, 1.0});
    EXPECT_THROW(WeightedGraph{d}, InputError);

    EXPECT_THROW(WeightedGraph{GraphData{}}, InputError);

    d = triangle();
    d.vertices[0].mu = std::numeric_limits<double>::infinity();
    EXPECT_THROW(WeightedGraph{d}, InputError);
}

TEST(Graph, ViolationsAreCollected)
{
    auto d = triangle();
    d.vertices[1].mu = 0.0;
    d.vertices[2].h2 = -1.0;
    d.edges[0].w = -1.0;
    d.edges.push_back({"b", "a", 1.0});
    const auto r = validate(d);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.violations.size(), 4u);
    EXPECT_THROW(WeightedGraph{d}, InputError);
}

TEST(Graph, IsolatedVertexWarns)
{
    auto d = triangle();
    d.vertices.push_back({"lonely", 1.0, 1.0, 1.0});
    WeightedGraph g(d);
    ASSERT_EQ(g.warnings().size(), 1u);
    EXPECT_NE(g.warnings()[0].find("lonely"), std::string::npos);
}

TEST(Graph, NamedGraphs)
{
    EXPECT_EQ(graphs::named("p2")->size(), 2u);
    EXPECT_EQ(graphs::named("path5")->edge_count(), 4u);
    EXPECT_EQ(graphs::named("complete4")->edge_count(), 6u);
    EXPECT_FALSE(graphs::named("path"));
    EXPECT_FALSE(graphs::named("cycle3"));
    EXPECT_FALSE(graphs::named("path0"));
}

TEST(VertexFunction, MapAndArithmetic)
{
    WeightedGraph g(triangle());
    const auto f = VertexFunction::from_map(g, {{"a", 1.0}, {"b", 2.0}, {"c", 3.0}});
    EXPECT_DOUBLE_EQ(f.at("b"), 2.0);
    EXPECT_THROW(VertexFunction::from_map(g, {{"a", 1.0}}), InputError);
    EXPECT_THROW(VertexFunction(g, std::vector<double>{1.0}), InputError);
    const auto s = 2.0 * f - VertexFunction::indicator(g, 2);
    EXPECT_DOUBLE_EQ(s[2], 5.0);
    EXPECT_DOUBLE_EQ((s + f)[0], 3.0);
}

TEST(VertexFunction, DifferentGraphsRejected)
{
    WeightedGraph g(triangle());
    const auto h = graphs::path(3);
    EXPECT_THROW(VertexFunction(g, 1.0) + VertexFunction(h, 1.0), InputError);
    EXPECT_THROW(StatePair(VertexFunction(g), VertexFunction(h)), InputError);
    EXPECT_THROW(integral(g, VertexFunction(h, 1.0)), InputError);
}
