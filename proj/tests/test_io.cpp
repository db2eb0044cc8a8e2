#include "grapde/io.hpp"

#include <gtest/gtest.h>

using namespace grapde;
using io::json;

namespace {

const char* kGraph = R"({
  "vertices": [{"id": "a", "mu": 2.0}, {"id": "b", "h1": 3.0}, {"id": "c"}],
  "edges": [{"a": "a", "b": "b", "w": 0.5}, {"a": "b", "b": "c"}]
})";

} // namespace

TEST(GraphIo, ParsesDefaultsAndRoundTrips)
{
    const auto g = io::parse_graph(kGraph);
    EXPECT_EQ(g.size(), 3u);
    EXPECT_DOUBLE_EQ(g.mu(0), 2.0);
    EXPECT_DOUBLE_EQ(g.h1()[1], 3.0);
    EXPECT_DOUBLE_EQ(g.h2()[2], 1.0);
    const auto again = io::parse_graph(io::to_json(g).dump());
    EXPECT_EQ(io::to_json(again), io::to_json(g));
}

TEST(GraphIo, RejectsMalformedInput)
{
    EXPECT_THROW(io::parse_graph("{"), InputError);
    EXPECT_THROW(io::parse_graph(R"({"vertices": [{"id": "a", "mass": 1}]})"), InputError);
    EXPECT_THROW(io::parse_graph(R"({"vertices": [{"id": "a", "mu": "1"}]})"), InputError);
    EXPECT_THROW(io::parse_graph(R"({"vertices": [{"mu": 1}]})"), InputError);
    EXPECT_THROW(io::parse_graph(R"({"vertices": [{"id": "a"}], "edges": [{"a": "a", "b": "q"}]})"), InputError);
    EXPECT_THROW(io::parse_graph(R"({"nodes": []})"), InputError);
    EXPECT_THROW(io::parse_graph(R"([1, 2])"), InputError);
    EXPECT_THROW(io::load_graph("/nonexistent/graph.json"), InputError);
}

TEST(GraphIo, NamedGraphs)
{
    EXPECT_EQ(io::load_graph("complete4").edge_count(), 6u);
}

TEST(ProblemIo, CustomNonlinearityWithTables)
{
    const auto g = io::parse_graph(kGraph);
    const auto b = io::parse_problem(R"({
      "F": "k*(u^2+v^2)^2",
      "coefficients": {"k": {"a": 1, "b": 2, "c": 3}},
      "objective": "k*u^2*w^2",
      "p": 3, "q": 2,
      "hypotheses": {"theta": 4, "c1": 48, "c2": 48, "r1": 4, "r2": 4, "J": [-2, 2], "x0": "b", "L": 0.5}
    })", g);
    EXPECT_EQ(b.name, "custom");
    EXPECT_DOUBLE_EQ(b.nl.eval(Which::F, 2, 1.0, 1.0, 0.0), 12.0);
    EXPECT_DOUBLE_EQ(b.objective->eval(Which::F, 1, 2.0, 0.0, 3.0), 72.0);
    EXPECT_EQ(b.p, 3.0);
    EXPECT_EQ(b.spec.J.hi, 2.0);
    EXPECT_EQ(*b.spec.x0, "b");
    EXPECT_EQ(*b.spec.L, std::vector<double>(3, 0.5));
}

TEST(ProblemIo, BuiltinWithParameters)
{
    const auto g = graphs::path(2);
    const auto b = io::parse_problem(R"({"builtin": "unique-example", "parameters": {"e": 0.05}})", g);
    EXPECT_DOUBLE_EQ(b.parameters.at("e*"), 0.05);
    const auto s = io::parse_problem(R"({"builtin": "mp-example", "scalar": true, "parameters": {"gamma": [1, 2]}})", g);
    EXPECT_EQ(s.nl.arity(), 1);
    EXPECT_DOUBLE_EQ(*s.spec.c1, 16.0);
    EXPECT_EQ(io::load_problem("scalar:mp-example", g).nl.arity(), 1);
    EXPECT_EQ(io::load_problem("builtin:nonexist-example", g).nl.arity(), 2);
}

TEST(ProblemIo, RejectsMalformedProblems)
{
    const auto g = graphs::path(2);
    EXPECT_THROW(io::parse_problem(R"({"F": "u", "extra": 1})", g), InputError);
    EXPECT_THROW(io::parse_problem(R"({"builtin": "mp-example", "F": "u"})", g), InputError);
    EXPECT_THROW(io::parse_problem(R"({})", g), InputError);
    EXPECT_THROW(io::parse_problem(R"({"F": "u +"})", g), ParseError);
    EXPECT_THROW(io::parse_problem(R"({"F": "k*u"})", g), InputError);
    EXPECT_THROW(io::parse_problem(R"({"F": "u", "scalar": "yes"})", g), InputError);
    EXPECT_THROW(io::parse_problem(R"({"F": "u", "p": 1})", g), InputError);
    EXPECT_THROW(io::parse_problem(R"({"F": "u", "hypotheses": {"theta": 1.5}})", g), InputError);
    EXPECT_THROW(io::parse_problem(R"({"F": "u", "hypotheses": {"x0": "nowhere"}})", g), InputError);
    EXPECT_THROW(io::parse_problem(R"({"F": "u", "coefficients": {"k": [1]}})", g), InputError);
    EXPECT_THROW(io::parse_problem(R"({"F": "u", "parameters": {"e": 1}})", g), InputError);
    EXPECT_THROW(io::parse_problem(R"({"builtin": "mp-example", "parameters": {"f": 1}})", g), InputError);
    EXPECT_THROW(io::load_problem("builtin:unknown", g), InputError);
}

TEST(Reports, NonFiniteValuesAreNull)
{
    BoundCertificate c;
    const auto j = io::to_json(c, false);
    EXPECT_TRUE(j["lower"].is_null());
    EXPECT_TRUE(j["A"][0].is_null());
    EXPECT_FALSE(j["satisfied"].get<bool>());
    SolveReport r;
    EXPECT_TRUE(io::to_json(r, true)["residual"].is_null());
    EXPECT_TRUE(io::to_json(r, true)["state"].is_null());
}

TEST(Reports, BranchCsv)
{
    const auto g = graphs::path(2);
    const auto inst = instance_of(builtin("mp-example", g));
    const auto br = sweep(inst, {-0.5, 0.0, 0.5}, SolverKind::mountain_pass);
    const auto csv = io::branch_csv(inst, br);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "w,norm_u,norm_v,energy,residual,C1,C2,psi");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
        EXPECT_EQ(line.back(), ','); // no psi column without an objective
    }
    EXPECT_EQ(rows, 3);
    const auto j = io::to_json(br, false);
    EXPECT_EQ(j["reports"].size(), 3u);
    EXPECT_EQ(j["jumps"].size(), 2u);
}

TEST(Reports, HypothesesAndProblem)
{
    const auto g = graphs::path(2);
    const auto b = builtin("mp-example", g);
    const auto j = io::to_json(b);
    EXPECT_EQ(j["F"], "(u^2+v^2)^2*(1+w^2)*abs(gamma(x))");
    EXPECT_EQ(j["hypotheses"]["theta"], 4.0);
    EXPECT_TRUE(j["hypotheses"]["L"].is_null());
    const auto h = io::to_json(check_hypotheses(instance_of(b)));
    ASSERT_TRUE(h.is_array());
    EXPECT_EQ(h[0]["name"], "F1");
}
