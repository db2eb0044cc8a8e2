#include "grapde/scalar.hpp"

#include <gtest/gtest.h>

using namespace grapde;

TEST(Scalar, MountainPassWithHandConstant)
{
    // path3, unit data: b = 1, |V| = 3, c1 = 8, so C'1 = (1/(4*3*8))^{1/2}
    const auto g = graphs::path(3);
    const auto b = scalar_builtin("mp-example", g);
    const auto r = scalar_solve_mp(instance_of(b, 0.3));
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.certificate.lower_name, "C'1");
    EXPECT_NEAR(r.certificate.lower, std::sqrt(1.0 / 96.0), 1e-15);
    EXPECT_TRUE(r.certificate.satisfied);
    EXPECT_EQ(r.x.size(), 3u);
}

TEST(Scalar, UpperConstantByHand)
{
    // u0 = (t, 0) on P2: ||u0||^2 = t^2 (1/2 + 1/2 + 1) = 2 t^2, C'2 = (4 * 2 * 2t^2 / 2)^{1/2}
    const auto g = graphs::path(2);
    const auto b = scalar_builtin("mp-example", g);
    Endpoint e;
    e.x = {1.5, 0.0};
    const auto c = scalar_bounds(instance_of(b), e);
    EXPECT_NEAR(c.upper, std::sqrt(8.0 * 2.25), 1e-14);
    EXPECT_NEAR(c.E0, 2.25, 1e-15);
}

TEST(Scalar, MatchesDecoupledSystem)
{
    const auto g = graphs::path(3);
    const auto sb = scalar_builtin("mp-example", g);
    const auto sr = scalar_solve_mp(instance_of(sb, -0.4));
    const ProblemInstance sys(Nonlinearity::parse(g, "(u^4+v^4)*(1+w^2)", {}), OperatorOrder(1, 2.0),
                              OperatorOrder(1, 2.0), {}, -0.4);
    Vec lifted = sr.x;
    lifted.resize(6, 0.0);
    Vec grad(6);
    kernel::gradient(sys, lifted, grad);
    EXPECT_LT(kernel::metric_norm(sys, grad), 1e-8);
    EXPECT_NEAR(kernel::energy(sys, lifted), sr.energy, 1e-14);
}

TEST(Scalar, LocalMinDefaultScale)
{
    // K1^4 = |V| = 2, so the small-growth bound is 1/8 and e = 0.8 / 8 / 2
    const auto b = scalar_builtin("localmin-example", graphs::path(2));
    EXPECT_NEAR(b.parameters.at("e"), 0.05, 1e-15);
    EXPECT_EQ(b.p, 4.0);
    const auto r = scalar_solve_min(instance_of(b));
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.certificate.lower_name, "C'3");
}

TEST(Scalar, ControlAndNonexistence)
{
    const auto g = graphs::path(2);
    const auto cb = scalar_builtin("control-objective", g);
    const auto c = scalar_control(instance_of(cb), *cb.objective, uniform_grid({-1.0, 1.0}, 5), SolverKind::mountain_pass);
    EXPECT_EQ(c.w_bar, 0.0);
    EXPECT_EQ(c.psi_bar, 0.0);
    EXPECT_EQ(c.continuity.name, "G'");
    EXPECT_EQ(c.continuity.verdict, Verdict::pass_sampled);

    SolveConfig cfg;
    const auto n = scalar_nonexistence(instance_of(scalar_builtin("nonexist-example", g)), {}, cfg);
    EXPECT_TRUE(n.certified);
    EXPECT_EQ(n.sign.name, "sign'");
}

TEST(Scalar, RejectsSystemInstances)
{
    const auto inst = instance_of(builtin("mp-example", graphs::path(2)));
    EXPECT_THROW(scalar_solve_mp(inst), InputError);
    EXPECT_THROW(scalar_sweep(inst, {0.0}, SolverKind::mountain_pass), InputError);
    EXPECT_THROW(scalar_builtin("unique-example", graphs::path(2)), InputError);
}
