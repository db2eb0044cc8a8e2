#pragma once

#include "grapde/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <span>
#include <vector>

namespace grapde::optim {

using Vec = std::vector<double>;

// A model supplies:
//   std::size_t dim() const;
//   double value(std::span<const double>) const;
//   void gradient(std::span<const double>, std::span<double>) const;   // in the model's own metric
//   double inner(std::span<const double>, std::span<const double>) const;
template <class M>
concept Model = requires(const M& m, std::span<const double> x, std::span<double> out) {
    { m.dim() } -> std::convertible_to<std::size_t>;
    { m.value(x) } -> std::convertible_to<double>;
    m.gradient(x, out);
    { m.inner(x, x) } -> std::convertible_to<double>;
};

inline void axpy(double a, std::span<const double> x, std::span<double> y)
{
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += a * x[i];
    }
}

inline Vec lincomb(double a, std::span<const double> x, double b, std::span<const double> y)
{
    Vec r(x.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = a * x[i] + b * y[i];
    }
    return r;
}

/// Objective value, with evaluation failures (overflow, domain errors) read as +inf
/// so that line searches simply reject the trial point.
template <Model M>
double safe_value(const M& m, std::span<const double> x)
{
    try {
        return m.value(x);
    } catch (const Error&) {
        return kInf;
    }
}

template <Model M>
double norm(const M& m, std::span<const double> x)
{
    return std::sqrt(std::max(0.0, m.inner(x, x)));
}

struct DescentOptions {
    double tol = 1e-8;
    std::size_t max_iter = 100000;
    std::size_t memory = 10; // nonmonotone window
    double armijo = 1e-4;
    double step_min = 1e-14;
    double step_max = 1e8;
    /// Optional retraction onto a feasible set; returns true when it moved the point.
    std::function<bool(Vec&)> retract;
};

struct DescentResult {
    Vec x;
    double value = 0.0;
    double residual = kInf; // metric norm of the gradient
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
    bool constrained = false; // the retraction was active at the final point
    bool stalled = false;     // line search could not make progress
};

/// Barzilai-Borwein gradient descent with a nonmonotone Armijo line search.
template <Model M>
DescentResult descend(const M& m, Vec x, const DescentOptions& opt = {})
{
    DescentResult r;
    const std::size_t n = m.dim();
    bool active = opt.retract ? opt.retract(x) : false;
    Vec g(n), g_new(n), x_new(n);
    double f = m.value(x);
    m.gradient(x, g);
    r.evaluations = 1;
    double gnorm = norm(m, g);
    std::deque<double> recent{f};
    double alpha = 1.0 / std::max(1.0, gnorm);
    std::size_t stuck = 0;

    for (r.iterations = 0; r.iterations < opt.max_iter; ++r.iterations) {
        if (gnorm <= opt.tol) {
            r.converged = true;
            break;
        }
        const double fmax = *std::max_element(recent.begin(), recent.end());
        const double slack = 1e-14 * std::max(1.0, std::abs(fmax));
        double step = std::clamp(alpha, opt.step_min, opt.step_max);
        bool accepted = false;
        double f_new = f;
        bool moved_by_retract = false;
        for (int bt = 0; bt < 60; ++bt) {
            x_new = lincomb(1.0, x, -step, g);
            moved_by_retract = opt.retract ? opt.retract(x_new) : false;
            f_new = safe_value(m, x_new);
            ++r.evaluations;
            // decrease predicted by the linear model along the actual displacement
            Vec d = lincomb(1.0, x_new, -1.0, x);
            const double pred = m.inner(g, d);
            if (std::isfinite(f_new) && f_new <= fmax + opt.armijo * pred + slack) {
                accepted = true;
                break;
            }
            step *= 0.5;
            if (step < opt.step_min) {
                break;
            }
        }
        if (!accepted) {
            r.stalled = true;
            break;
        }
        m.gradient(x_new, g_new);
        Vec s = lincomb(1.0, x_new, -1.0, x);
        Vec y = lincomb(1.0, g_new, -1.0, g);
        const double ss = m.inner(s, s);
        const double sy = m.inner(s, y);
        alpha = sy > 0.0 ? ss / sy : std::min(opt.step_max, 2.0 * step);
        if (moved_by_retract && ss <= 1e-28 * std::max(1.0, m.inner(x, x))) {
            ++stuck;
        } else {
            stuck = 0;
        }
        x.swap(x_new);
        g.swap(g_new);
        f = f_new;
        gnorm = norm(m, g);
        active = moved_by_retract;
        recent.push_back(f);
        if (recent.size() > opt.memory) {
            recent.pop_front();
        }
        if (stuck >= 5) {
            break;
        }
    }
    r.x = std::move(x);
    r.value = f;
    r.residual = gnorm;
    r.constrained = active;
    return r;
}

/// R(x) = 1/2 <g, g> for a model whose gradient is taken in its own metric.
///
/// Because the Hessian is self-adjoint in that metric, grad R = H g; H g is
/// obtained from a central difference of the gradient along g.
template <Model M>
class ResidualModel {
public:
    explicit ResidualModel(const M& m) : m_(m) {}

    [[nodiscard]] std::size_t dim() const { return m_.dim(); }
    [[nodiscard]] double inner(std::span<const double> a, std::span<const double> b) const { return m_.inner(a, b); }
    [[nodiscard]] double value(std::span<const double> x) const
    {
        Vec g(dim());
        m_.gradient(x, g);
        return 0.5 * m_.inner(g, g);
    }
    void gradient(std::span<const double> x, std::span<double> out) const
    {
        const std::size_t n = dim();
        Vec g(n);
        m_.gradient(x, g);
        const double gn = norm(m_, g);
        if (gn == 0.0) {
            std::fill(out.begin(), out.end(), 0.0);
            return;
        }
        double xn = 0.0;
        for (double v : x) {
            xn = std::max(xn, std::abs(v));
        }
        const double h = 1e-6 * std::max(1.0, xn);
        Vec xp(x.begin(), x.end()), xm(x.begin(), x.end());
        for (std::size_t i = 0; i < n; ++i) {
            xp[i] += h * g[i] / gn;
            xm[i] -= h * g[i] / gn;
        }
        Vec gp(n), gm(n);
        m_.gradient(xp, gp);
        m_.gradient(xm, gm);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = (gp[i] - gm[i]) / (2.0 * h) * gn;
        }
    }
    /// Metric norm of the underlying gradient.
    [[nodiscard]] double residual(std::span<const double> x) const
    {
        Vec g(dim());
        m_.gradient(x, g);
        return norm(m_, g);
    }

private:
    const M& m_;
};

/// Drives the gradient of m to zero by minimizing 1/2 |grad|^2; converges to
/// the critical point nearest the start, whatever its index.
template <Model M>
DescentResult polish_critical(const M& m, Vec x, const DescentOptions& opt = {})
{
    ResidualModel<M> rm(m);
    // Stop on the residual of m itself, not on |grad R|.
    DescentResult best;
    DescentOptions o = opt;
    o.tol = 0.0;
    o.retract = nullptr;
    const std::size_t chunk = 200;
    std::size_t used = 0;
    DescentResult r;
    r.x = std::move(x);
    while (true) {
        const double res = rm.residual(r.x);
        ++r.evaluations;
        if (res <= opt.tol) {
            r.residual = res;
            r.converged = true;
            break;
        }
        if (used >= opt.max_iter) {
            r.residual = res;
            break;
        }
        o.max_iter = std::min(chunk, opt.max_iter - used);
        auto step = descend(rm, r.x, o);
        used += step.iterations;
        r.evaluations += 3 * step.evaluations;
        const bool progressed = step.value < 0.5 * res * res * (1.0 - 1e-12);
        r.x = std::move(step.x);
        if (step.stalled && !progressed) {
            r.residual = rm.residual(r.x);
            r.converged = r.residual <= opt.tol;
            r.stalled = !r.converged;
            break;
        }
    }
    r.iterations = used;
    r.value = m.value(r.x);
    return r;
}

struct StringOptions {
    std::size_t nodes = 41;
    std::size_t max_iter = 3000;
    double tol = 1e-7; // relative node displacement per iteration
    double armijo = 1e-4;
};

struct StringResult {
    std::vector<Vec> path;
    std::vector<double> energy;
    std::size_t peak = 0;
    Vec peak_state;     // parabolic refinement around the peak node
    double peak_energy = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Redistributes interior nodes at equal arclength (metric of m), ends fixed.
template <Model M>
void reparametrize(const M& m, std::vector<Vec>& path)
{
    const std::size_t N = path.size();
    std::vector<double> s(N, 0.0);
    for (std::size_t i = 1; i < N; ++i) {
        const Vec d = lincomb(1.0, path[i], -1.0, path[i - 1]);
        s[i] = s[i - 1] + norm(m, d);
    }
    const double L = s.back();
    if (!(L > 0.0)) {
        return;
    }
    std::vector<Vec> out(N);
    out.front() = path.front();
    out.back() = path.back();
    std::size_t seg = 1;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const double target = L * static_cast<double>(i) / static_cast<double>(N - 1);
        while (seg < N - 1 && s[seg] < target) {
            ++seg;
        }
        const double len = s[seg] - s[seg - 1];
        const double a = len > 0.0 ? (target - s[seg - 1]) / len : 0.0;
        out[i] = lincomb(1.0 - a, path[seg - 1], a, path[seg]);
    }
    path.swap(out);
}

/// String method between a and b for a mountain-pass path.
///
/// Each interior node with nonnegative energy takes one Armijo step along the
/// component of -grad perpendicular to the path; the string is then
/// reparametrized by arclength. Nodes already below zero energy (the far side
/// of the barrier, where the energy may be unbounded below) move only through
/// reparametrization. At convergence the moving part traces a minimum-energy
/// path whose highest point approximates the mountain-pass saddle.
template <Model M>
StringResult string_method(const M& m, const Vec& a, const Vec& b, const StringOptions& opt = {})
{
    const std::size_t N = std::max<std::size_t>(opt.nodes, 3);
    const std::size_t n = m.dim();
    StringResult r;
    r.path.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(N - 1);
        r.path[i] = lincomb(1.0 - t, a, t, b);
    }
    std::vector<double> step(N, 1.0);
    Vec g(n);
    for (r.iterations = 0; r.iterations < opt.max_iter; ++r.iterations) {
        std::vector<Vec> before = r.path;
        double seg = 0.0;
        for (std::size_t i = 1; i < N; ++i) {
            seg += norm(m, lincomb(1.0, before[i], -1.0, before[i - 1]));
        }
        // no node moves more than half a segment per sweep, so the string cannot tear
        const double cap = 0.5 * seg / static_cast<double>(N - 1);
        for (std::size_t i = 1; i + 1 < N; ++i) {
            auto& x = r.path[i];
            const double f = safe_value(m, x);
            if (!(f >= 0.0)) {
                continue;
            }
            m.gradient(x, g);
            r.evaluations += 1;
            Vec tau = lincomb(1.0, before[i + 1], -1.0, before[i - 1]);
            const double tn = norm(m, tau);
            if (tn > 0.0) {
                for (auto& v : tau) {
                    v /= tn;
                }
                axpy(-m.inner(g, tau), tau, g);
            }
            const double gg = m.inner(g, g);
            if (gg == 0.0) {
                continue;
            }
            double t = std::min({step[i] * 2.0, 1e8, cap / std::sqrt(gg)});
            for (int bt = 0; bt < 60; ++bt) {
                Vec trial = lincomb(1.0, x, -t, g);
                const double ft = safe_value(m, trial);
                ++r.evaluations;
                if (std::isfinite(ft) && ft <= f - opt.armijo * t * gg) {
                    x = std::move(trial);
                    break;
                }
                t *= 0.5;
            }
            step[i] = t;
        }
        reparametrize(m, r.path);
        double length = 0.0;
        double moved = 0.0;
        for (std::size_t i = 1; i < N; ++i) {
            length += norm(m, lincomb(1.0, r.path[i], -1.0, r.path[i - 1]));
            moved = std::max(moved, norm(m, lincomb(1.0, r.path[i], -1.0, before[i])));
        }
        if (moved <= opt.tol * std::max(length, 1e-300)) {
            r.converged = true;
            ++r.iterations;
            break;
        }
    }
    r.energy.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        r.energy[i] = m.value(r.path[i]);
    }
    r.evaluations += N;
    r.peak = static_cast<std::size_t>(std::max_element(r.energy.begin() + 1, r.energy.end() - 1) - r.energy.begin());
    r.peak_state = r.path[r.peak];
    r.peak_energy = r.energy[r.peak];
    // Vertex of the parabola through the peak and its neighbours, in node units.
    const double e0 = r.energy[r.peak - 1], e1 = r.energy[r.peak], e2 = r.energy[r.peak + 1];
    const double curv = e0 - 2.0 * e1 + e2;
    if (curv < 0.0) {
        const double off = std::clamp(0.5 * (e0 - e2) / curv, -0.5, 0.5);
        const std::size_t j = off < 0.0 ? r.peak - 1 : r.peak + 1;
        Vec cand = lincomb(1.0 - std::abs(off), r.path[r.peak], std::abs(off), r.path[j]);
        const double ec = m.value(cand);
        ++r.evaluations;
        if (ec >= r.peak_energy) {
            r.peak_state = std::move(cand);
            r.peak_energy = ec;
        }
    }
    return r;
}

} // namespace grapde::optim
