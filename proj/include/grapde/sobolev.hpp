#pragma once

#include "grapde/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace grapde {

/// W^{m,s}(V) with the potential used in its norm.
struct SpaceSpec {
    OperatorOrder ord;
    Potential potential = Potential::h1;
};

struct EmbeddingConstants {
    double b = 0.0;  // sup-norm embedding constant of W^{m1,p}
    double d = 0.0;  // sup-norm embedding constant of W^{m2,q}
    double K1 = 0.0; // |V|^{1/p} b
    double K2 = 0.0; // |V|^{1/q} d
    double mu_min = 0.0;
    double h1_min = 0.0;
    double h2_min = 0.0;
    double volume = 0.0; // |V|
};

namespace kernel {

/// ||u||_{W^{m,s}}^s.
inline double w_norm_pow(const WeightedGraph& g, std::span<const double> u, const SpaceSpec& spec)
{
    const auto mod = grad_modulus(g, u, spec.ord.m);
    const auto h = g.potential(spec.potential);
    CompensatedSum s;
    for (std::size_t x = 0; x < g.size(); ++x) {
        s += g.mu(x) * (abs_pow(mod[x], spec.ord.s) + h[x] * abs_pow(u[x], spec.ord.s));
    }
    return s.value();
}

/// ||u||_{W^{m,s}}^s with the |nabla^m u|^s integral supplied by a prebuilt operator.
inline double w_norm_pow(const PolyLaplacian& op, std::span<const double> u, Potential which)
{
    const auto& g = op.graph();
    const auto h = g.potential(which);
    const double s = op.order().s;
    CompensatedSum acc;
    acc += op.energy(u);
    for (std::size_t x = 0; x < g.size(); ++x) {
        acc += g.mu(x) * h[x] * abs_pow(u[x], s);
    }
    return acc.value();
}

} // namespace kernel

/// (integral of |nabla^m u|^s + h |u|^s)^{1/s}.
inline double w_norm(const WeightedGraph& g, const VertexFunction& u, const SpaceSpec& spec)
{
    require_on(g, u);
    return std::pow(kernel::w_norm_pow(g, u.values(), spec), 1.0 / spec.ord.s);
}

/// ||u||_{W^{m1,p}} + ||v||_{W^{m2,q}}.
inline double product_norm(const WeightedGraph& g, const StatePair& state, const SpaceSpec& first,
                           const SpaceSpec& second)
{
    return w_norm(g, state.u, first) + w_norm(g, state.v, second);
}

inline double sup_norm(const VertexFunction& u)
{
    double m = 0.0;
    for (double x : u.values()) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

/// (integral of |u|^r)^{1/r}.
inline double lr_norm(const WeightedGraph& g, const VertexFunction& u, double r)
{
    require_on(g, u);
    CompensatedSum s;
    for (std::size_t x = 0; x < g.size(); ++x) {
        s += g.mu(x) * abs_pow(u[x], r);
    }
    return std::pow(s.value(), 1.0 / r);
}

inline EmbeddingConstants embedding_constants(const WeightedGraph& g, double p, double q)
{
    if (!(p >= 2.0) || !(q >= 2.0)) {
        throw InputError("embedding constants require p, q >= 2");
    }
    EmbeddingConstants c;
    c.mu_min = g.mu_min();
    c.h1_min = g.potential_min(Potential::h1);
    c.h2_min = g.potential_min(Potential::h2);
    c.volume = total_measure(g);
    c.b = std::pow(1.0 / (c.mu_min * c.h1_min), 1.0 / p);
    c.d = std::pow(1.0 / (c.mu_min * c.h2_min), 1.0 / q);
    c.K1 = std::pow(c.volume, 1.0 / p) * c.b;
    c.K2 = std::pow(c.volume, 1.0 / q) * c.d;
    return c;
}

} // namespace grapde
