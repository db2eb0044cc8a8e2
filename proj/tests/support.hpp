#pragma once

#include "grapde/grapde.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using grapde::GraphData;
using grapde::WeightedGraph;

/// Connected random graph: a random spanning tree plus extra edges with
/// probability 0.4; measures, potentials and weights in [0.5, 2].
inline WeightedGraph random_graph(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> pos(0.5, 2.0);
    std::bernoulli_distribution extra(0.4);
    GraphData d;
    for (std::size_t i = 0; i < n; ++i) {
        d.vertices.push_back({"x" + std::to_string(i), pos(rng), pos(rng), pos(rng)});
    }
    std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t j = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
        used[i][j] = used[j][i] = true;
        d.edges.push_back({d.vertices[i].id, d.vertices[j].id, pos(rng)});
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!used[i][j] && extra(rng)) {
                d.edges.push_back({d.vertices[i].id, d.vertices[j].id, pos(rng)});
            }
        }
    }
    return WeightedGraph(std::move(d));
}

inline std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double scale = 1.0)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = u(rng);
    }
    return v;
}

/// Dense weight matrix; zero where there is no edge.
inline std::vector<std::vector<double>> weight_matrix(const WeightedGraph& g)
{
    std::vector<std::vector<double>> w(g.size(), std::vector<double>(g.size(), 0.0));
    for (const auto& e : g.data().edges) {
        const auto a = *g.index_of(e.a);
        const auto b = *g.index_of(e.b);
        w[a][b] = w[b][a] = e.w;
    }
    return w;
}

/// Laplacian from the dense matrix, independent of the adjacency lists.
inline std::vector<double> dense_laplacian(const WeightedGraph& g, const std::vector<double>& u)
{
    const auto w = weight_matrix(g);
    std::vector<double> out(g.size(), 0.0);
    for (std::size_t x = 0; x < g.size(); ++x) {
        for (std::size_t y = 0; y < g.size(); ++y) {
            out[x] += w[x][y] * (u[y] - u[x]);
        }
        out[x] /= g.mu(x);
    }
    return out;
}

/// Gamma(u, v) from the dense matrix.
inline std::vector<double> dense_gamma(const WeightedGraph& g, const std::vector<double>& u,
                                       const std::vector<double>& v)
{
    const auto w = weight_matrix(g);
    std::vector<double> out(g.size(), 0.0);
    for (std::size_t x = 0; x < g.size(); ++x) {
        for (std::size_t y = 0; y < g.size(); ++y) {
            out[x] += w[x][y] * (u[y] - u[x]) * (v[y] - v[x]);
        }
        out[x] /= 2.0 * g.mu(x);
    }
    return out;
}

/// |nabla^m u| from the dense operators.
inline std::vector<double> dense_modulus(const WeightedGraph& g, std::vector<double> u, int m)
{
    for (int k = 0; k < m / 2; ++k) {
        u = dense_laplacian(g, u);
    }
    if (m % 2 == 0) {
        for (auto& x : u) {
            x = std::abs(x);
        }
        return u;
    }
    auto gm = dense_gamma(g, u, u);
    for (auto& x : gm) {
        x = std::sqrt(std::max(0.0, x));
    }
    return gm;
}

/// (integral of |nabla^m u|^s + h |u|^s)^(1/s) from the dense operators.
inline double dense_w_norm(const WeightedGraph& g, const std::vector<double>& u, int m, double s,
                           grapde::Potential h = grapde::Potential::h1)
{
    const auto mod = dense_modulus(g, u, m);
    const auto pot = g.potential(h);
    double acc = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x) {
        acc += g.mu(x) * (std::pow(mod[x], s) + pot[x] * std::pow(std::abs(u[x]), s));
    }
    return std::pow(acc, 1.0 / s);
}

inline double integral(const WeightedGraph& g, const std::vector<double>& f)
{
    double acc = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x) {
        acc += g.mu(x) * f[x];
    }
    return acc;
}

inline double integral_abs(const WeightedGraph& g, const std::vector<double>& f)
{
    double acc = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x) {
        acc += g.mu(x) * std::abs(f[x]);
    }
    return acc;
}

/// Central-difference derivative of phi along vertex i of block b, divided by mu(i)
/// so that it compares to the mu-weighted gradient.
inline double fd_gradient(const grapde::ProblemInstance& inst, const grapde::Vec& x, std::size_t k, double h)
{
    auto a = x;
    auto b = x;
    a[k] += h;
    b[k] -= h;
    const double d = (grapde::kernel::energy(inst, a) - grapde::kernel::energy(inst, b)) / (2.0 * h);
    return d / inst.graph().mu(k % inst.n());
}

} // namespace testing_support
