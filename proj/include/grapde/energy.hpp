#pragma once

#include "grapde/nonlinearity.hpp"

#include <memory>
#include <vector>

namespace grapde {

/// Full problem data at one parameter value w.
///
/// A system instance has two unknown blocks (u, v); a scalar instance has the
/// single block u. States are handled as flat vectors, block b occupying
/// entries [b n, (b+1) n).
class ProblemInstance {
public:
    ProblemInstance(Nonlinearity nl, OperatorOrder ord1, OperatorOrder ord2, HypothesisSpec spec, double w)
        : nl_(std::move(nl)), spec_(std::move(spec)), w_(w)
    {
        if (nl_.arity() != 2) {
            throw InputError("system instance needs a two-argument nonlinearity");
        }
        blocks_.push_back(make_block(ord1, Potential::h1));
        blocks_.push_back(make_block(ord2, Potential::h2));
        check_w();
    }

    static ProblemInstance scalar(Nonlinearity nl, OperatorOrder ord, HypothesisSpec spec, double w,
                                  Potential h = Potential::h1)
    {
        if (nl.arity() != 1) {
            throw InputError("scalar instance needs a one-argument nonlinearity");
        }
        return ProblemInstance(std::move(nl), ord, h, std::move(spec), w);
    }

    [[nodiscard]] const WeightedGraph& graph() const noexcept { return nl_.graph(); }
    [[nodiscard]] const Nonlinearity& nl() const noexcept { return nl_; }
    [[nodiscard]] const HypothesisSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] double w() const noexcept { return w_; }
    [[nodiscard]] bool is_scalar() const noexcept { return blocks_.size() == 1; }
    [[nodiscard]] std::size_t blocks() const noexcept { return blocks_.size(); }
    [[nodiscard]] std::size_t n() const noexcept { return graph().size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return blocks_.size() * n(); }

    [[nodiscard]] const OperatorOrder& ord(std::size_t b) const { return blocks_.at(b).op->order(); }
    [[nodiscard]] Potential potential(std::size_t b) const { return blocks_.at(b).h; }
    [[nodiscard]] const PolyLaplacian& op(std::size_t b) const { return *blocks_.at(b).op; }
    [[nodiscard]] SpaceSpec space(std::size_t b) const { return {ord(b), potential(b)}; }
    [[nodiscard]] double p() const { return ord(0).s; }
    [[nodiscard]] double q() const { return ord(blocks_.size() - 1).s; }

    /// Same instance at another parameter value.
    [[nodiscard]] ProblemInstance at(double w) const
    {
        ProblemInstance c = *this;
        c.w_ = w;
        c.check_w();
        return c;
    }

    [[nodiscard]] ProblemInstance with_spec(HypothesisSpec spec) const
    {
        ProblemInstance c = *this;
        c.spec_ = std::move(spec);
        c.check_w();
        return c;
    }

private:
    struct Block {
        std::shared_ptr<const PolyLaplacian> op;
        Potential h;
    };

    ProblemInstance(Nonlinearity nl, OperatorOrder ord, Potential h, HypothesisSpec spec, double w)
        : nl_(std::move(nl)), spec_(std::move(spec)), w_(w)
    {
        blocks_.push_back(make_block(ord, h));
        check_w();
    }

    Block make_block(OperatorOrder ord, Potential h) const
    {
        return {std::make_shared<const PolyLaplacian>(nl_.graph(), ord), h};
    }

    void check_w() const
    {
        if (!spec_.J.contains(w_)) {
            throw InputError("parameter w = " + detail::format_number(w_) + " lies outside J = ["
                             + detail::format_number(spec_.J.lo) + ", " + detail::format_number(spec_.J.hi) + "]");
        }
    }

    Nonlinearity nl_;
    HypothesisSpec spec_;
    double w_;
    std::vector<Block> blocks_;
};

using Vec = std::vector<double>;

namespace kernel {

inline std::span<const double> block(const ProblemInstance& inst, std::span<const double> x, std::size_t b)
{
    return x.subspan(b * inst.n(), inst.n());
}

inline double energy(const ProblemInstance& inst, std::span<const double> x)
{
    const auto& g = inst.graph();
    const std::size_t n = inst.n();
    CompensatedSum e;
    for (std::size_t b = 0; b < inst.blocks(); ++b) {
        e += w_norm_pow(inst.op(b), block(inst, x, b), inst.potential(b)) / inst.ord(b).s;
    }
    const bool sys = !inst.is_scalar();
    for (std::size_t i = 0; i < n; ++i) {
        e += -g.mu(i) * inst.nl().eval(Which::F, i, x[i], sys ? x[n + i] : 0.0, inst.w());
    }
    return e.value();
}

/// mu-weighted gradient: d energy[eta] = sum_b sum_x mu(x) g_b(x) eta_b(x).
inline void gradient(const ProblemInstance& inst, std::span<const double> x, std::span<double> out)
{
    const auto& g = inst.graph();
    const std::size_t n = inst.n();
    const bool sys = !inst.is_scalar();
    for (std::size_t b = 0; b < inst.blocks(); ++b) {
        const auto xb = block(inst, x, b);
        auto ob = out.subspan(b * n, n);
        inst.op(b).apply(xb, ob);
        const auto h = g.potential(inst.potential(b));
        const double s = inst.ord(b).s;
        const Which which = b == 0 ? Which::Fu : Which::Fv;
        for (std::size_t i = 0; i < n; ++i) {
            ob[i] += h[i] * signed_pow(xb[i], s) - inst.nl().eval(which, i, x[i], sys ? x[n + i] : 0.0, inst.w());
        }
    }
}

inline double inner(const ProblemInstance& inst, std::span<const double> a, std::span<const double> b)
{
    const auto& g = inst.graph();
    const std::size_t n = inst.n();
    CompensatedSum s;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += g.mu(k % n) * a[k] * b[k];
    }
    return s.value();
}

inline double metric_norm(const ProblemInstance& inst, std::span<const double> a)
{
    return std::sqrt(std::max(0.0, inner(inst, a, a)));
}

/// Per-block W-norms.
inline std::vector<double> block_norms(const ProblemInstance& inst, std::span<const double> x)
{
    std::vector<double> out;
    for (std::size_t b = 0; b < inst.blocks(); ++b) {
        out.push_back(std::pow(w_norm_pow(inst.op(b), block(inst, x, b), inst.potential(b)), 1.0 / inst.ord(b).s));
    }
    return out;
}

/// ||u|| + ||v|| (or ||u|| for a scalar instance).
inline double state_norm(const ProblemInstance& inst, std::span<const double> x)
{
    double s = 0.0;
    for (double v : block_norms(inst, x)) {
        s += v;
    }
    return s;
}

/// integral of (F_u u + F_v v).
inline double nonlinear_pairing(const ProblemInstance& inst, std::span<const double> x)
{
    const std::size_t n = inst.n();
    const bool sys = !inst.is_scalar();
    CompensatedSum s;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = x[i];
        const double v = sys ? x[n + i] : 0.0;
        double t = inst.nl().eval(Which::Fu, i, u, v, inst.w()) * u;
        if (sys) {
            t += inst.nl().eval(Which::Fv, i, u, v, inst.w()) * v;
        }
        s += inst.graph().mu(i) * t;
    }
    return s.value();
}

} // namespace kernel

/// The energy functional of one instance, in the form the optimizers consume.
class EnergyFunctional {
public:
    explicit EnergyFunctional(ProblemInstance inst) : inst_(std::move(inst)) {}

    [[nodiscard]] const ProblemInstance& instance() const noexcept { return inst_; }
    [[nodiscard]] std::size_t dim() const noexcept { return inst_.dim(); }
    [[nodiscard]] double value(std::span<const double> x) const { return kernel::energy(inst_, x); }
    void gradient(std::span<const double> x, std::span<double> out) const { kernel::gradient(inst_, x, out); }
    [[nodiscard]] double inner(std::span<const double> a, std::span<const double> b) const
    {
        return kernel::inner(inst_, a, b);
    }
    [[nodiscard]] double state_norm(std::span<const double> x) const { return kernel::state_norm(inst_, x); }

private:
    ProblemInstance inst_;
};

// ---------------------------------------------------------------------------
// StatePair interface

inline Vec flatten(const ProblemInstance& inst, const StatePair& s)
{
    require_on(inst.graph(), s.u);
    require_on(inst.graph(), s.v);
    Vec x(s.u.values().begin(), s.u.values().end());
    if (!inst.is_scalar()) {
        x.insert(x.end(), s.v.values().begin(), s.v.values().end());
    }
    return x;
}

/// StatePair view of a flat state; a scalar state carries v = 0.
inline StatePair unflatten(const ProblemInstance& inst, std::span<const double> x)
{
    const auto& g = inst.graph();
    const std::size_t n = inst.n();
    VertexFunction u(g, Vec(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n)));
    if (inst.is_scalar()) {
        return {std::move(u), VertexFunction(g)};
    }
    return {std::move(u), VertexFunction(g, Vec(x.begin() + static_cast<std::ptrdiff_t>(n), x.end()))};
}

/// phi_w(u,v) = (1/p)||u||^p + (1/q)||v||^q - integral of F(x,u,v,w).
inline double phi(const ProblemInstance& inst, const StatePair& s)
{
    return kernel::energy(inst, flatten(inst, s));
}

inline StatePair phi_grad(const ProblemInstance& inst, const StatePair& s)
{
    const auto x = flatten(inst, s);
    Vec g(x.size());
    kernel::gradient(inst, x, g);
    return unflatten(inst, g);
}

/// sqrt(integral of g_u^2 + g_v^2).
inline double el_residual_norm(const ProblemInstance& inst, const StatePair& s)
{
    const auto x = flatten(inst, s);
    Vec g(x.size());
    kernel::gradient(inst, x, g);
    return kernel::metric_norm(inst, g);
}

/// psi(u,v,w) = integral of g(x,u,v,w); g is any expression in u, v, w and coefficients.
inline double psi(const ProblemInstance& inst, const StatePair& s, const Nonlinearity& objective)
{
    const auto& gr = inst.graph();
    require_on(gr, s.u);
    require_on(gr, s.v);
    if (!objective.graph().same_vertices(gr)) {
        throw InputError("objective is defined on a different graph");
    }
    CompensatedSum acc;
    for (std::size_t i = 0; i < gr.size(); ++i) {
        acc += gr.mu(i) * objective.eval(Which::F, i, s.u[i], s.v[i], inst.w());
    }
    return acc.value();
}

} // namespace grapde
