#include "support.hpp"

#include <gtest/gtest.h>

using namespace grapde;
namespace ts = testing_support;

TEST(Calculus, LaplacianMatchesDenseOracle)
{
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) {
        const auto g = ts::random_graph(rng, 2 + k % 7);
        const auto u = ts::random_values(rng, g.size());
        const auto lap = laplacian(g, VertexFunction(g, u));
        const auto oracle = ts::dense_laplacian(g, u);
        for (std::size_t x = 0; x < g.size(); ++x) {
            EXPECT_NEAR(lap[x], oracle[x], 1e-12);
        }
    }
}

TEST(Calculus, LaplacianOnPathByHand)
{
    const auto g = graphs::path(3);
    const auto lap = laplacian(g, VertexFunction(g, std::vector<double>{1.0, 4.0, 9.0}));
    EXPECT_DOUBLE_EQ(lap[0], 3.0);
    EXPECT_DOUBLE_EQ(lap[1], 2.0);
    EXPECT_DOUBLE_EQ(lap[2], -5.0);
}

TEST(Calculus, GradientFormIdentities)
{
    std::mt19937_64 rng(2);
    for (int k = 0; k < 20; ++k) {
        const auto g = ts::random_graph(rng, 2 + k % 7);
        const auto u = ts::random_values(rng, g.size());
        const auto v = ts::random_values(rng, g.size());
        VertexFunction U(g, u), V(g, v);
        const auto gm = gradient_form(g, U, V);
        const auto oracle = ts::dense_gamma(g, u, v);
        const auto sym = gradient_form(g, V, U);
        for (std::size_t x = 0; x < g.size(); ++x) {
            EXPECT_NEAR(gm[x], oracle[x], 1e-12);
            EXPECT_NEAR(gm[x], sym[x], 1e-15);
        }
        // 2 Gamma(u,v) = Delta(uv) - u Delta v - v Delta u
        std::vector<double> uv(g.size());
        for (std::size_t x = 0; x < g.size(); ++x) {
            uv[x] = u[x] * v[x];
        }
        const auto luv = ts::dense_laplacian(g, uv);
        const auto lu = ts::dense_laplacian(g, u);
        const auto lv = ts::dense_laplacian(g, v);
        for (std::size_t x = 0; x < g.size(); ++x) {
            EXPECT_NEAR(2.0 * gm[x], luv[x] - u[x] * lv[x] - v[x] * lu[x], 1e-11);
        }
    }
}

TEST(Calculus, GradModulusByOrder)
{
    std::mt19937_64 rng(3);
    const auto g = ts::random_graph(rng, 6);
    const auto u = ts::random_values(rng, g.size());
    for (int m = 1; m <= 4; ++m) {
        const auto mod = grad_modulus(g, VertexFunction(g, u), m);
        const auto oracle = ts::dense_modulus(g, u, m);
        for (std::size_t x = 0; x < g.size(); ++x) {
            EXPECT_NEAR(mod[x], oracle[x], 1e-11 * (1.0 + oracle[x])) << "m=" << m;
        }
    }
}

TEST(Calculus, OperatorOrderValidation)
{
    EXPECT_THROW(OperatorOrder(0, 2.0), InputError);
    EXPECT_THROW(OperatorOrder(1, 1.5), InputError);
    EXPECT_THROW(OperatorOrder(1, kInf), InputError);
    EXPECT_EQ(OperatorOrder(3, 2.0).laplacian_power(), 1);
    EXPECT_EQ(OperatorOrder(4, 2.0).laplacian_power(), 2);
}

TEST(Calculus, QuadraticPolyLaplacianIsLinearPower)
{
    // For s = 2 the operator is (-Delta)^m.
    std::mt19937_64 rng(4);
    for (int k = 0; k < 10; ++k) {
        const auto g = ts::random_graph(rng, 3 + k % 5);
        const auto u = ts::random_values(rng, g.size());
        for (int m = 1; m <= 3; ++m) {
            auto oracle = u;
            for (int j = 0; j < m; ++j) {
                oracle = ts::dense_laplacian(g, oracle);
                for (auto& x : oracle) {
                    x = -x;
                }
            }
            const auto L = polylap_apply(g, VertexFunction(g, u), OperatorOrder(m, 2.0));
            for (std::size_t x = 0; x < g.size(); ++x) {
                EXPECT_NEAR(L[x], oracle[x], 1e-10 * (1.0 + std::abs(oracle[x]))) << "m=" << m;
            }
        }
    }
}

TEST(Calculus, WeakFormIsDerivativeOfEnergy)
{
    // integral of (L u) phi = d/de (1/s) integral |nabla^m (u + e phi)|^s at e = 0.
    std::mt19937_64 rng(5);
    for (int k = 0; k < 12; ++k) {
        const auto g = ts::random_graph(rng, 3 + k % 4);
        const auto u = ts::random_values(rng, g.size());
        const auto phi = ts::random_values(rng, g.size());
        const int m = 1 + k % 3;
        const double s = 2.0 + (k % 4) * 0.5;
        auto energy = [&](double e) {
            std::vector<double> w(u.size());
            for (std::size_t x = 0; x < u.size(); ++x) {
                w[x] = u[x] + e * phi[x];
            }
            const auto mod = ts::dense_modulus(g, w, m);
            double acc = 0.0;
            for (std::size_t x = 0; x < g.size(); ++x) {
                acc += g.mu(x) * std::pow(mod[x], s);
            }
            return acc / s;
        };
        const double h = 1e-5;
        const double fd = (energy(h) - energy(-h)) / (2.0 * h);
        const double weak = polylap_weak_form(g, VertexFunction(g, u), VertexFunction(g, phi), OperatorOrder(m, s));
        EXPECT_NEAR(weak, fd, 1e-6 * (1.0 + std::abs(fd))) << "m=" << m << " s=" << s;
    }
}

TEST(Calculus, PLaplacianOfConstantVanishes)
{
    const auto g = graphs::complete(4);
    const auto d = p_laplacian(g, VertexFunction(g, 3.0), 3.0);
    for (std::size_t x = 0; x < g.size(); ++x) {
        EXPECT_EQ(d[x], 0.0);
    }
}

TEST(Calculus, PolyLaplacianRejectsForeignFunction)
{
    const auto g = graphs::path(3);
    const auto h = graphs::path(4);
    EXPECT_THROW(polylap_apply(g, VertexFunction(h, 1.0), OperatorOrder(1, 2.0)), InputError);
}
