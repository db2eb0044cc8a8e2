#include "grapde/scalar.hpp"

#include <gtest/gtest.h>

using namespace grapde;

namespace {

HypothesisReport screen(const BuiltinProblem& b)
{
    return check_hypotheses(b.nl, b.spec, OperatorOrder(b.m1, b.p), OperatorOrder(b.m2, b.q));
}

HypothesisReport screen_custom(const WeightedGraph& g, const char* F, const HypothesisSpec& spec)
{
    return check_hypotheses(Nonlinearity::parse(g, F, {}), spec, OperatorOrder(1, 2.0), OperatorOrder(1, 2.0));
}

} // namespace

TEST(Hypotheses, MountainPassExamplePasses)
{
    const auto r = screen(builtin("mp-example", graphs::path(2)));
    EXPECT_TRUE(r.all_pass({"F1", "F2", "F3", "F4", "H1", "H2", "H3"}));
    EXPECT_EQ(r.verdict("H4"), Verdict::skipped);
    EXPECT_EQ(r.verdict("sign"), Verdict::fail);
    EXPECT_EQ(r.find("nothing"), nullptr);
}

TEST(Hypotheses, NonexistenceExampleSign)
{
    const auto r = screen(builtin("nonexist-example", graphs::path(2)));
    EXPECT_EQ(r.verdict("sign"), Verdict::pass_sampled);
    EXPECT_NE(r.find("sign")->detail.find("65536"), std::string::npos);
}

TEST(Hypotheses, SmallGrowthAndSpikeFloorConflict)
{
    // The default scale satisfies the small-growth bound; the spike floor then
    // cannot hold since it needs mu(x0) L(x0) above the spike norm.
    const auto r = screen(builtin("unique-example", graphs::path(2)));
    EXPECT_EQ(r.verdict("F2"), Verdict::pass_sampled);
    EXPECT_EQ(r.verdict("H4"), Verdict::fail);
    EXPECT_EQ(r.verdict("H1"), Verdict::skipped);
}

TEST(Hypotheses, SmallGrowthFailsForLargeQuadratic)
{
    HypothesisSpec s;
    const auto r = screen_custom(graphs::path(2), "10*(u^2+v^2)", s);
    EXPECT_EQ(r.verdict("F2"), Verdict::fail);
    ASSERT_TRUE(r.find("F2")->witness);
}

TEST(Hypotheses, ArAndUpperBoundWitnesses)
{
    // F = u^4 + v^4: F_t t + F_s s = 4F, so theta = 5 fails and theta = 4 passes;
    // c = 4 meets the upper bound with equality, c = 3 does not.
    const auto g = graphs::path(2);
    HypothesisSpec s;
    s.theta = 5.0;
    s.c1 = 3.0;
    s.c2 = 3.0;
    s.r1 = 4.0;
    s.r2 = 4.0;
    auto r = screen_custom(g, "u^4+v^4", s);
    EXPECT_EQ(r.verdict("H1"), Verdict::fail);
    EXPECT_TRUE(r.find("H1")->witness);
    EXPECT_EQ(r.verdict("H2"), Verdict::fail);
    s.theta = 4.0;
    s.c1 = 4.0;
    s.c2 = 4.0;
    r = screen_custom(g, "u^4+v^4", s);
    EXPECT_EQ(r.verdict("H1"), Verdict::pass_sampled);
    EXPECT_EQ(r.verdict("H2"), Verdict::pass_sampled);
}

TEST(Hypotheses, VanishingAtOriginRequired)
{
    HypothesisSpec s;
    const auto r = screen_custom(graphs::path(2), "1 + u^4", s);
    EXPECT_EQ(r.verdict("F1"), Verdict::fail);
}

TEST(Hypotheses, ScalarNamesArePrimed)
{
    const auto b = scalar_builtin("mp-example", graphs::path(2));
    const auto r = check_hypotheses(b.nl, b.spec, OperatorOrder(1, 2.0), OperatorOrder(1, 2.0));
    EXPECT_TRUE(r.all_pass({"F'1", "F'2", "H'1", "H'2"}));
    EXPECT_EQ(r.find("H5"), nullptr);
    EXPECT_EQ(r.verdict("sign'"), Verdict::fail);
}

TEST(Hypotheses, ObjectiveScreens)
{
    const auto g = graphs::path(2);
    EXPECT_EQ(check_objective_continuity(Nonlinearity::parse(g, "u^4*w^2", {}, 1)).verdict, Verdict::pass);
    EXPECT_EQ(check_objective_continuity(Nonlinearity::parse(g, "1/(1+u^2)", {}, 1)).verdict, Verdict::inconclusive);
    const Interval J{-1.0, 1.0};
    EXPECT_EQ(check_objective_convexity(Nonlinearity::parse(g, "u^4*w^2", {}, 1), J, {0.0, 1.0}).verdict,
              Verdict::pass_sampled);
    EXPECT_EQ(check_objective_convexity(Nonlinearity::parse(g, "-w^2", {}, 1), J, {0.0}).verdict, Verdict::fail);
}
