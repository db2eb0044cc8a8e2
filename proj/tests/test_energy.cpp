#include "support.hpp"

#include <gtest/gtest.h>

using namespace grapde;
namespace ts = testing_support;

TEST(Energy, PhiOnP2ByHand)
{
    const auto g = graphs::path(2);
    const auto b = builtin("mp-example", g);
    const ProblemInstance inst(b.nl, OperatorOrder(1, 3.0), OperatorOrder(1, 2.0), b.spec, 0.0);
    VertexFunction e0(g, std::vector<double>{1.0, 0.0});
    // ||u||^3 = 2 (1/2)^{3/2} + 1, ||v||^2 = 2, integral of F = (1+1)^2
    const double expect = (1.0 + std::sqrt(0.5)) / 3.0 + 2.0 / 2.0 - 4.0;
    EXPECT_NEAR(phi(inst, StatePair(e0, e0)), expect, 1e-15);
    EXPECT_NEAR(phi(inst.at(1.0), StatePair(e0, e0)), expect - 4.0, 1e-15);
    EXPECT_EQ(phi(inst, StatePair::zero(g)), 0.0);
}

TEST(Energy, GradientMatchesFiniteDifferences)
{
    std::mt19937_64 rng(21);
    for (int k = 0; k < 10; ++k) {
        const auto g = ts::random_graph(rng, 2 + k % 5);
        auto nl = Nonlinearity::parse(g, "c*(u^2+v^2)^2 + sin(u)*v*w", {{"c", VertexFunction(g, 0.5)}});
        const ProblemInstance inst(nl, OperatorOrder(1 + k % 3, 2.0 + k % 3), OperatorOrder(1 + k % 2, 3.0), {}, 0.5);
        const auto x = ts::random_values(rng, inst.dim());
        const auto grad = phi_grad(inst, unflatten(inst, x));
        for (std::size_t i = 0; i < inst.dim(); ++i) {
            const double analytic = i < g.size() ? grad.u[i] : grad.v[i - g.size()];
            const double fd = ts::fd_gradient(inst, x, i, 1e-6);
            EXPECT_NEAR(analytic, fd, 1e-6 * (1.0 + std::abs(fd)));
        }
    }
}

TEST(Energy, ScalarGradient)
{
    std::mt19937_64 rng(22);
    const auto g = ts::random_graph(rng, 5);
    const auto inst = ProblemInstance::scalar(Nonlinearity::parse(g, "u^4*(1+w^2)", {}, 1), OperatorOrder(2, 3.0), {}, 0.2);
    EXPECT_TRUE(inst.is_scalar());
    EXPECT_EQ(inst.dim(), 5u);
    const auto x = ts::random_values(rng, 5);
    Vec grad(5);
    kernel::gradient(inst, x, grad);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_NEAR(grad[i], ts::fd_gradient(inst, x, i, 1e-6), 1e-6);
    }
}

TEST(Energy, ResidualIsWeightedGradientNorm)
{
    GraphData d;
    d.vertices = {{"a", 2.0, 1.0, 1.0}, {"b", 0.5, 1.0, 1.0}};
    d.edges = {{"a", "b", 1.0}};
    WeightedGraph g(d);
    const ProblemInstance inst(Nonlinearity::parse(g, "u*v", {}), OperatorOrder(1, 2.0), OperatorOrder(1, 2.0), {}, 0.0);
    const StatePair s(VertexFunction(g, std::vector<double>{1.0, -1.0}), VertexFunction(g, std::vector<double>{0.5, 2.0}));
    const auto grad = phi_grad(inst, s);
    double acc = 0.0;
    for (std::size_t x = 0; x < 2; ++x) {
        acc += g.mu(x) * (grad.u[x] * grad.u[x] + grad.v[x] * grad.v[x]);
    }
    EXPECT_NEAR(el_residual_norm(inst, s), std::sqrt(acc), 1e-14);
    // u-equation at a: -Delta u + u - v = -(1/2)(-1 - 1) + 1 - 0.5
    EXPECT_NEAR(grad.u[0], 1.0 + 1.0 - 0.5, 1e-15);
}

TEST(Energy, CriticalPointIdentity)
{
    // At any state, d phi[(u,v)] = ||u||^p + ||v||^q - integral of (F_u u + F_v v).
    std::mt19937_64 rng(23);
    const auto g = ts::random_graph(rng, 4);
    const ProblemInstance inst(Nonlinearity::parse(g, "(u^2+v^2)^2", {}), OperatorOrder(1, 3.0), OperatorOrder(2, 2.0),
                               {}, 0.0);
    const auto x = ts::random_values(rng, inst.dim());
    Vec grad(x.size());
    kernel::gradient(inst, x, grad);
    const auto bn = kernel::block_norms(inst, x);
    const double lhs = kernel::inner(inst, grad, x);
    const double rhs = std::pow(bn[0], 3.0) + std::pow(bn[1], 2.0) - kernel::nonlinear_pairing(inst, x);
    EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + std::abs(rhs)));
    EXPECT_NEAR(kernel::state_norm(inst, x), bn[0] + bn[1], 1e-15);
}

TEST(Energy, PsiByHand)
{
    const auto g = graphs::path(2);
    const auto b = builtin("control-objective", g);
    const ProblemInstance inst(b.nl, OperatorOrder(1, 3.0), OperatorOrder(1, 2.0), b.spec, 1.0);
    const StatePair s(VertexFunction(g, std::vector<double>{1.0, 0.0}), VertexFunction(g));
    EXPECT_DOUBLE_EQ(psi(inst, s, *b.objective), 1.0);
    EXPECT_DOUBLE_EQ(psi(inst.at(0.0), s, *b.objective), 0.0);
    EXPECT_THROW(psi(inst, s, builtin("control-objective", graphs::path(3)).objective.value()), InputError);
}

TEST(Energy, InstanceValidation)
{
    const auto g = graphs::path(2);
    const auto b = builtin("mp-example", g);
    const ProblemInstance inst(b.nl, OperatorOrder(1, 3.0), OperatorOrder(1, 2.0), b.spec, 0.0);
    EXPECT_THROW((void)inst.at(1.5), InputError);
    EXPECT_THROW(ProblemInstance::scalar(b.nl, OperatorOrder(1, 2.0), b.spec, 0.0), InputError);
    EXPECT_EQ(inst.p(), 3.0);
    EXPECT_EQ(inst.q(), 2.0);
    EXPECT_THROW(unflatten(inst, Vec(3)), InputError);
}
