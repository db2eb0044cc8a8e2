#pragma once

#include "grapde/graph.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace grapde {

/// Order m >= 1 and exponent s >= 2 of a poly-Laplacian.
struct OperatorOrder {
    int m = 1;
    double s = 2.0;

    OperatorOrder() = default;
    OperatorOrder(int m_, double s_) : m(m_), s(s_)
    {
        if (m < 1) {
            throw InputError("operator order m must be >= 1, got " + std::to_string(m));
        }
        if (!(s >= 2.0) || !std::isfinite(s)) {
            throw InputError("operator exponent must be finite and >= 2, got " + std::to_string(s));
        }
    }

    [[nodiscard]] bool odd() const noexcept { return m % 2 == 1; }
    /// Number of Laplacian applications inside |nabla^m u|.
    [[nodiscard]] int laplacian_power() const noexcept { return odd() ? (m - 1) / 2 : m / 2; }
};

namespace kernel {

inline void laplacian(const WeightedGraph& g, std::span<const double> u, std::span<double> out)
{
    for (std::size_t x = 0; x < g.size(); ++x) {
        double acc = 0.0;
        for (const auto& nb : g.neighbors(x)) {
            acc += nb.weight * (u[nb.vertex] - u[x]);
        }
        out[x] = acc / g.mu(x);
    }
}

inline std::vector<double> laplacian_power(const WeightedGraph& g, std::span<const double> u, int k)
{
    std::vector<double> a(u.begin(), u.end());
    std::vector<double> b(u.size());
    for (int i = 0; i < k; ++i) {
        laplacian(g, a, b);
        a.swap(b);
    }
    return a;
}

inline double gradient_form_at(const WeightedGraph& g, std::span<const double> u, std::span<const double> v,
                               std::size_t x)
{
    double acc = 0.0;
    for (const auto& nb : g.neighbors(x)) {
        acc += nb.weight * (u[nb.vertex] - u[x]) * (v[nb.vertex] - v[x]);
    }
    return acc / (2.0 * g.mu(x));
}

/// |nabla^m u| at every vertex.
inline std::vector<double> grad_modulus(const WeightedGraph& g, std::span<const double> u, int m)
{
    const OperatorOrder ord(m, 2.0);
    auto a = laplacian_power(g, u, ord.laplacian_power());
    std::vector<double> out(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
        out[x] = ord.odd() ? std::sqrt(std::max(0.0, gradient_form_at(g, a, a, x))) : std::abs(a[x]);
    }
    return out;
}

/// |nabla^m u|^{s-2}, with 0^{s-2} = 0 for s > 2 and 1 for s = 2.
inline double modulus_weight(double modulus, double s)
{
    return abs_pow(modulus, s - 2.0);
}

} // namespace kernel

inline VertexFunction laplacian(const WeightedGraph& g, const VertexFunction& u)
{
    require_on(g, u);
    std::vector<double> out(g.size());
    kernel::laplacian(g, u.values(), out);
    return {g, std::move(out)};
}

/// Gamma(u, v)(x) = 1/(2 mu(x)) sum_y w_xy (u(y)-u(x)) (v(y)-v(x)).
inline VertexFunction gradient_form(const WeightedGraph& g, const VertexFunction& u, const VertexFunction& v)
{
    require_on(g, u);
    require_on(g, v);
    std::vector<double> out(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
        out[x] = kernel::gradient_form_at(g, u.values(), v.values(), x);
    }
    return {g, std::move(out)};
}

/// |nabla^m u|: |nabla Delta^{(m-1)/2} u| for odd m, |Delta^{m/2} u| for even m.
inline VertexFunction grad_modulus(const WeightedGraph& g, const VertexFunction& u, int m)
{
    require_on(g, u);
    return {g, kernel::grad_modulus(g, u.values(), m)};
}

/// Delta_p u(x) = 1/(2 mu(x)) sum_y (|nabla u|^{p-2}(y) + |nabla u|^{p-2}(x)) w_xy (u(y)-u(x)).
inline VertexFunction p_laplacian(const WeightedGraph& g, const VertexFunction& u, double p)
{
    require_on(g, u);
    if (!(p >= 2.0)) {
        throw InputError("p-Laplacian requires p >= 2");
    }
    const auto grad = kernel::grad_modulus(g, u.values(), 1);
    std::vector<double> weight(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
        weight[x] = kernel::modulus_weight(grad[x], p);
    }
    std::vector<double> out(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
        double acc = 0.0;
        for (const auto& nb : g.neighbors(x)) {
            acc += (weight[nb.vertex] + weight[x]) * nb.weight * (u[nb.vertex] - u[x]);
        }
        out[x] = acc / (2.0 * g.mu(x));
    }
    return {g, std::move(out)};
}

/// The weak-form poly-Laplacian of one fixed (graph, order) pair.
///
/// Holds Delta^k applied to every vertex indicator so that the strong form can
/// be recovered by testing against delta_x / mu(x).
class PolyLaplacian {
public:
    PolyLaplacian(WeightedGraph g, OperatorOrder ord) : graph_(std::move(g)), ord_(ord)
    {
        const std::size_t n = graph_.size();
        const int k = ord_.laplacian_power();
        basis_.resize(n);
        for (std::size_t x = 0; x < n; ++x) {
            std::vector<double> delta(n, 0.0);
            delta[x] = 1.0;
            basis_[x] = kernel::laplacian_power(graph_, delta, k);
        }
    }

    [[nodiscard]] const OperatorOrder& order() const noexcept { return ord_; }
    [[nodiscard]] const WeightedGraph& graph() const noexcept { return graph_; }

    /// Integral of |nabla^m u|^s.
    [[nodiscard]] double energy(std::span<const double> u) const
    {
        const auto mod = kernel::grad_modulus(graph_, u, ord_.m);
        CompensatedSum s;
        for (std::size_t x = 0; x < graph_.size(); ++x) {
            s += graph_.mu(x) * abs_pow(mod[x], ord_.s);
        }
        return s.value();
    }

    /// Integral of (L_{m,s} u) phi, evaluated through the defining bilinear form.
    [[nodiscard]] double weak_form(std::span<const double> u, std::span<const double> phi) const
    {
        const auto prep = prepare(u);
        const auto dphi = kernel::laplacian_power(graph_, phi, ord_.laplacian_power());
        return pair(prep, dphi);
    }

    /// r with r(x) = weak_form(u, delta_x / mu(x)).
    void apply(std::span<const double> u, std::span<double> out) const
    {
        const auto prep = prepare(u);
        for (std::size_t x = 0; x < graph_.size(); ++x) {
            out[x] = pair(prep, basis_[x]) / graph_.mu(x);
        }
    }

    [[nodiscard]] std::vector<double> apply(std::span<const double> u) const
    {
        std::vector<double> out(graph_.size());
        apply(u, out);
        return out;
    }

private:
    struct Prepared {
        std::vector<double> a;      // Delta^k u
        std::vector<double> weight; // |nabla^m u|^{s-2}
    };

    [[nodiscard]] Prepared prepare(std::span<const double> u) const
    {
        Prepared p;
        p.a = kernel::laplacian_power(graph_, u, ord_.laplacian_power());
        p.weight.resize(graph_.size());
        for (std::size_t x = 0; x < graph_.size(); ++x) {
            const double mod = ord_.odd() ? std::sqrt(std::max(0.0, kernel::gradient_form_at(graph_, p.a, p.a, x)))
                                          : std::abs(p.a[x]);
            p.weight[x] = kernel::modulus_weight(mod, ord_.s);
        }
        return p;
    }

    [[nodiscard]] double pair(const Prepared& p, std::span<const double> dphi) const
    {
        CompensatedSum s;
        for (std::size_t x = 0; x < graph_.size(); ++x) {
            if (p.weight[x] == 0.0) {
                continue;
            }
            const double inner = ord_.odd() ? kernel::gradient_form_at(graph_, p.a, dphi, x) : p.a[x] * dphi[x];
            s += graph_.mu(x) * p.weight[x] * inner;
        }
        return s.value();
    }

    WeightedGraph graph_;
    OperatorOrder ord_;
    std::vector<std::vector<double>> basis_;
};

inline double polylap_weak_form(const WeightedGraph& g, const VertexFunction& u, const VertexFunction& phi,
                                const OperatorOrder& ord)
{
    require_on(g, u);
    require_on(g, phi);
    return PolyLaplacian(g, ord).weak_form(u.values(), phi.values());
}

inline VertexFunction polylap_apply(const WeightedGraph& g, const VertexFunction& u, const OperatorOrder& ord)
{
    require_on(g, u);
    return {g, PolyLaplacian(g, ord).apply(u.values())};
}

} // namespace grapde
