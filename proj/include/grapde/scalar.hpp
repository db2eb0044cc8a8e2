#pragma once

#include "grapde/continuation.hpp"

#include <string>
#include <vector>

namespace grapde {

inline const std::vector<std::string>& scalar_builtin_names()
{
    static const std::vector<std::string> names{"mp-example", "localmin-example", "control-objective",
                                                "nonexist-example"};
    return names;
}

/// Single-unknown versions of the worked examples: the quartic u^4 (1+w^2)|gamma|
/// with p = 2, its small-scale local-minimum variant with p = 4, the control
/// objective z u^4 w^2 and the nonexistence example -xsq (u atan u - log(1+u^2)/2),
/// whose derivative is -xsq atan(u).
inline BuiltinProblem scalar_builtin(const std::string& name, const WeightedGraph& g, const BuiltinOptions& opt = {})
{
    const Interval J{-1.0, 1.0};
    const auto gamma = detail::table_or(opt.gamma, g, "gamma", 1.0);
    if (detail::min_abs(gamma) <= 0.0) {
        throw InputError("gamma must be nonzero at every vertex");
    }
    const double gsup = detail::sup_abs(gamma);
    std::vector<double> c_fn(gamma.size());
    std::transform(gamma.begin(), gamma.end(), c_fn.begin(), [](double x) { return std::abs(x); });

    if (name == "mp-example" || name == "control-objective") {
        auto nl = Nonlinearity::parse(g, "u^4*(1+w^2)*abs(gamma)", {{"gamma", VertexFunction(g, gamma)}}, 1);
        BuiltinProblem b{name, std::move(nl), {}, 1, 1, 2.0, 2.0, std::nullopt, {}};
        b.spec.J = J;
        b.spec.theta = 4.0;
        b.spec.r1 = 4.0;
        b.spec.c1 = 8.0 * gsup;
        b.spec.a_floor = detail::quartic_floor();
        b.spec.c_fn = c_fn;
        if (name == "control-objective") {
            const auto z = detail::table_or(opt.z, g, "z", 1.0);
            if (*std::min_element(z.begin(), z.end()) <= 0.0) {
                throw InputError("z must be positive");
            }
            b.objective = Nonlinearity::parse(g, "z*u^4*w^2", {{"z", VertexFunction(g, z)}}, 1);
        }
        return b;
    }
    if (name == "localmin-example") {
        const double p = 4.0;
        const auto k = embedding_constants(g, p, p);
        // F/|t|^4 <= 2 e |gamma| on J
        const double e = opt.e ? *opt.e : 0.8 / (p * std::pow(k.K1, p)) / (2.0 * gsup);
        if (!(e > 0.0)) {
            throw InputError("scale e must be positive");
        }
        auto nl = Nonlinearity::parse(g, "e*u^4*(1+w^2)*abs(gamma)",
                                      {{"gamma", VertexFunction(g, gamma)}, {"e", VertexFunction(g, e)}}, 1);
        BuiltinProblem b{name, std::move(nl), {}, 1, 1, p, p, std::nullopt, {}};
        b.spec.J = J;
        b.spec.L = std::vector<double>(g.size(), e * detail::min_abs(gamma));
        b.spec.delta = 1.0;
        b.parameters["e"] = e;
        return b;
    }
    if (name == "nonexist-example") {
        std::vector<double> xsq(g.size());
        for (std::size_t i = 0; i < xsq.size(); ++i) {
            xsq[i] = static_cast<double>(i + 1);
        }
        if (opt.xsq) {
            xsq = detail::table_or(opt.xsq, g, "xsq", 1.0);
        }
        if (*std::min_element(xsq.begin(), xsq.end()) <= 0.0) {
            throw InputError("xsq must be positive");
        }
        auto nl = Nonlinearity::parse(g, "-xsq*(u*atan(u)-0.5*log(1+u^2))", {{"xsq", VertexFunction(g, xsq)}}, 1);
        BuiltinProblem b{name, std::move(nl), {}, 1, 1, 2.0, 2.0, std::nullopt, {}};
        b.spec.J = J;
        return b;
    }
    throw InputError("unknown scalar builtin '" + name + "'");
}

/// Instance of a builtin (system or scalar) at parameter w.
inline ProblemInstance instance_of(const BuiltinProblem& b, double w = 0.0)
{
    if (b.nl.arity() == 1) {
        return ProblemInstance::scalar(b.nl, OperatorOrder(b.m1, b.p), b.spec, w);
    }
    return {b.nl, OperatorOrder(b.m1, b.p), OperatorOrder(b.m2, b.q), b.spec, w};
}

namespace detail {

inline void require_scalar(const ProblemInstance& inst)
{
    if (!inst.is_scalar()) {
        throw InputError("scalar operation on a system instance");
    }
}

} // namespace detail

inline SolveReport scalar_solve_mp(const ProblemInstance& inst, const SolveConfig& cfg = {})
{
    detail::require_scalar(inst);
    return mountain_pass_solve(inst, cfg);
}

inline SolveReport scalar_solve_min(const ProblemInstance& inst, const SolveConfig& cfg = {})
{
    detail::require_scalar(inst);
    return local_min_solve(inst, cfg);
}

/// C'1 and C'2 for a given endpoint u0 (a scalar state of negative energy).
inline BoundCertificate scalar_bounds(const ProblemInstance& inst, const Endpoint& u0, double norm = kNaN)
{
    detail::require_scalar(inst);
    return bound_certificate_mp(inst, u0, norm);
}

inline Branch scalar_sweep(const ProblemInstance& inst, const std::vector<double>& grid, SolverKind kind,
                           const SolveConfig& cfg = {}, StartMode mode = StartMode::warm)
{
    detail::require_scalar(inst);
    return sweep(inst, grid, kind, cfg, mode);
}

/// Control over the scalar branch; the objective g(x,u,w) is also screened for
/// midpoint convexity in w, which the scalar theory adds to continuity.
inline ControlReport scalar_control(const ProblemInstance& inst, const Nonlinearity& objective,
                                    const std::vector<double>& grid, SolverKind kind, const SolveConfig& cfg = {},
                                    StartMode mode = StartMode::warm)
{
    detail::require_scalar(inst);
    auto c = optimal_control(inst, objective, grid, kind, cfg, mode);
    c.continuity = check_objective_convexity(objective, inst.spec().J, {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0});
    return c;
}

inline NonexistenceReport scalar_nonexistence(const ProblemInstance& inst, const SamplingConfig& sampling = {},
                                              const SolveConfig& cfg = {})
{
    detail::require_scalar(inst);
    return nonexistence_check(inst, sampling, cfg);
}

} // namespace grapde
