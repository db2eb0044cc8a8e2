#pragma once

#include "grapde/expr.hpp"
#include "grapde/sobolev.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace grapde {

/// Which of the three compiled expressions to evaluate.
enum class Which { F, Fu, Fv };

/// F(x, u, v, w) for a system, or F(x, u, w) for the scalar equation, together
/// with its exact symbolic partials and the per-vertex coefficient tables.
class Nonlinearity {
public:
    Nonlinearity(const WeightedGraph& g, Expr F, std::map<std::string, VertexFunction> tables, int arity = 2)
        : graph_(g), arity_(arity), F_(std::move(F))
    {
        if (arity_ != 1 && arity_ != 2) {
            throw InputError("nonlinearity arity must be 1 or 2");
        }
        if (arity_ == 1 && depends_on(F_, Var::v)) {
            throw InputError("scalar nonlinearity must not depend on v");
        }
        Fu_ = differentiate(F_, Var::u);
        Fv_ = arity_ == 2 ? differentiate(F_, Var::v) : Expr::number(0.0);
        const auto names = coefficient_names(F_);
        slots_.assign(names.begin(), names.end());
        for (const auto& name : slots_) {
            const auto it = tables.find(name);
            if (it == tables.end()) {
                throw InputError("coefficient '" + name + "' has no table");
            }
            require_on(g, it->second);
        }
        const std::size_t n = g.size();
        coefs_.resize(n * slots_.size());
        for (std::size_t s = 0; s < slots_.size(); ++s) {
            const auto& t = tables.at(slots_[s]);
            for (std::size_t x = 0; x < n; ++x) {
                coefs_[x * slots_.size() + s] = t[x];
            }
        }
        tables_ = std::move(tables);
        code_F_ = CompiledExpr(F_, slots_);
        code_Fu_ = CompiledExpr(Fu_, slots_);
        code_Fv_ = CompiledExpr(Fv_, slots_);
    }

    static Nonlinearity parse(const WeightedGraph& g, std::string_view source,
                              std::map<std::string, VertexFunction> tables, int arity = 2)
    {
        return {g, parse_expr(source), std::move(tables), arity};
    }

    [[nodiscard]] const WeightedGraph& graph() const noexcept { return graph_; }
    [[nodiscard]] int arity() const noexcept { return arity_; }
    [[nodiscard]] const Expr& F() const noexcept { return F_; }
    [[nodiscard]] const Expr& Fu() const noexcept { return Fu_; }
    [[nodiscard]] const Expr& Fv() const noexcept { return Fv_; }
    [[nodiscard]] const Expr& expr(Which which) const noexcept
    {
        return which == Which::F ? F_ : which == Which::Fu ? Fu_ : Fv_;
    }
    [[nodiscard]] const std::map<std::string, VertexFunction>& tables() const noexcept { return tables_; }

    /// Value of F, F_u or F_v at vertex index x. Domain errors carry the point.
    [[nodiscard]] double eval(Which which, std::size_t x, double u, double v, double w) const
    {
        const auto& code = which == Which::F ? code_F_ : which == Which::Fu ? code_Fu_ : code_Fv_;
        const std::span<const double> c(coefs_.data() + x * slots_.size(), slots_.size());
        try {
            return code.eval(u, v, w, c);
        } catch (const DomainError& e) {
            const char* name = which == Which::F ? "F" : which == Which::Fu ? "F_u" : "F_v";
            throw DomainError(std::string(name) + " at vertex '" + graph_.id(x) + "' (u=" + detail::format_number(u)
                              + ", v=" + detail::format_number(v) + ", w=" + detail::format_number(w)
                              + "): " + e.what());
        }
    }

    [[nodiscard]] double eval(Which which, std::string_view id, double u, double v, double w) const
    {
        const auto x = graph_.index_of(id);
        if (!x) {
            throw InputError("unknown vertex '" + std::string(id) + "'");
        }
        return eval(which, *x, u, v, w);
    }

private:
    WeightedGraph graph_;
    int arity_;
    Expr F_, Fu_, Fv_;
    std::map<std::string, VertexFunction> tables_;
    std::vector<std::string> slots_;
    std::vector<double> coefs_;
    CompiledExpr code_F_, code_Fu_, code_Fv_;
};

struct Interval {
    double lo = -1.0;
    double hi = 1.0;

    [[nodiscard]] bool contains(double w) const noexcept { return w >= lo && w <= hi; }
    /// k points spread uniformly over the interval (the midpoint when k = 1).
    [[nodiscard]] std::vector<double> samples(std::size_t k) const
    {
        std::vector<double> out;
        if (k == 1) {
            out.push_back(0.5 * (lo + hi));
            return out;
        }
        for (std::size_t i = 0; i < k; ++i) {
            out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k - 1));
        }
        return out;
    }
};

/// One sample of the lower-bound function a(r) used by the positivity floor.
struct FloorSample {
    double r = 0.0;
    double a = 0.0;
};

/// Constants named by the growth and structure hypotheses. Absent values stay
/// empty; the checker and the certificates report what they could not use.
struct HypothesisSpec {
    std::optional<double> theta;
    std::optional<double> c1, c2, r1, r2;
    std::optional<double> gamma1, gamma2;
    std::optional<double> delta;
    std::optional<std::vector<double>> L; // per vertex, graph order
    std::optional<std::string> x0;
    std::optional<double> d1, d2;
    Interval J;
    std::vector<FloorSample> a_floor;
    std::optional<std::vector<double>> c_fn; // per vertex, graph order

    void validate(double p, double q) const
    {
        const double pq = std::max(p, q);
        if (!(J.lo <= J.hi) || !std::isfinite(J.lo) || !std::isfinite(J.hi)) {
            throw InputError("parameter interval J must be bounded and nonempty");
        }
        if (theta && !(*theta > pq)) {
            throw InputError("theta must exceed max{p,q}");
        }
        for (auto [name, value] : {std::pair{"c1", c1}, std::pair{"c2", c2}, std::pair{"r1", r1},
                                   std::pair{"r2", r2}, std::pair{"gamma1", gamma1}, std::pair{"gamma2", gamma2},
                                   std::pair{"delta", delta}, std::pair{"d1", d1}, std::pair{"d2", d2}}) {
            if (value && !(*value > 0.0)) {
                throw InputError(std::string(name) + " must be positive");
            }
        }
        if (r1 && r2 && !(std::min(*r1, *r2) > pq)) {
            throw InputError("min{r1,r2} must exceed max{p,q}");
        }
    }
};

/// Ready-made problem: nonlinearity, constants and the operator data it was stated for.
struct BuiltinProblem {
    std::string name;
    Nonlinearity nl;
    HypothesisSpec spec;
    int m1 = 1;
    int m2 = 1;
    double p = 2.0;
    double q = 2.0;
    std::optional<Nonlinearity> objective;
    std::map<std::string, double> parameters; // e, e*, ... as resolved
};

/// User overrides for builtin parameters; unset values take the defaults.
struct BuiltinOptions {
    std::optional<std::vector<double>> gamma;
    std::optional<std::vector<double>> z;
    std::optional<std::vector<double>> xsq;
    std::optional<double> e;
};

inline const std::vector<std::string>& builtin_names()
{
    static const std::vector<std::string> names{"mp-example", "localmin-example", "unique-example",
                                                "control-objective", "nonexist-example"};
    return names;
}

namespace detail {

inline double sup_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

inline double min_abs(const std::vector<double>& v)
{
    double m = kInf;
    for (double x : v) {
        m = std::min(m, std::abs(x));
    }
    return m;
}

inline std::vector<double> table_or(const std::optional<std::vector<double>>& given, const WeightedGraph& g,
                                    const char* name, double fill)
{
    if (!given) {
        return std::vector<double>(g.size(), fill);
    }
    if (given->size() != g.size()) {
        throw InputError(std::string("table '") + name + "' must have one value per vertex");
    }
    return *given;
}

inline std::vector<FloorSample> quartic_floor()
{
    std::vector<FloorSample> out;
    for (double r : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
        out.push_back({r, r * r * r * r});
    }
    return out;
}

} // namespace detail

/// The worked examples: mountain-pass quartic, local-minimum quartic, the
/// quadratic uniqueness example, the control objective and the nonexistence pair.
///
/// The scale e (or e*) defaults to 0.8 times the largest value for which the
/// small-amplitude growth bound holds on the whole of J for the given gamma.
inline BuiltinProblem builtin(const std::string& name, const WeightedGraph& g, const BuiltinOptions& opt = {})
{
    const Interval J{-1.0, 1.0};
    const double wmax2 = 1.0;
    const auto gamma = detail::table_or(opt.gamma, g, "gamma", 1.0);
    if (detail::min_abs(gamma) <= 0.0) {
        throw InputError("gamma must be nonzero at every vertex");
    }
    const double gsup = detail::sup_abs(gamma);
    const double gmin = detail::min_abs(gamma);

    auto quartic = [&] {
        std::map<std::string, VertexFunction> t{{"gamma", VertexFunction(g, gamma)}};
        return Nonlinearity::parse(g, "(u^2+v^2)^2*(1+w^2)*abs(gamma)", std::move(t));
    };
    auto f2_bound = [&](double p, double q) {
        const auto k = embedding_constants(g, p, q);
        return std::min(1.0 / (p * std::pow(k.K1, p)), 1.0 / (q * std::pow(k.K2, q)));
    };

    if (name == "mp-example" || name == "control-objective") {
        BuiltinProblem b{name, quartic(), {}, 1, 1, 3.0, 2.0, std::nullopt, {}};
        b.spec.J = J;
        b.spec.theta = 4.0;
        b.spec.r1 = 4.0;
        b.spec.r2 = 4.0;
        b.spec.c1 = 16.0 * gsup;
        b.spec.c2 = 16.0 * gsup;
        b.spec.a_floor = detail::quartic_floor();
        b.spec.c_fn = std::vector<double>(gamma.size());
        std::transform(gamma.begin(), gamma.end(), b.spec.c_fn->begin(), [](double x) { return std::abs(x); });
        if (name == "control-objective") {
            const auto z = detail::table_or(opt.z, g, "z", 1.0);
            if (*std::min_element(z.begin(), z.end()) <= 0.0) {
                throw InputError("z must be positive");
            }
            b.objective = Nonlinearity::parse(g, "z*(u^2+v^2)^2*w^2", {{"z", VertexFunction(g, z)}});
        }
        return b;
    }
    if (name == "localmin-example" || name == "unique-example") {
        const bool quart = name == "localmin-example";
        const double p = quart ? 4.0 : 2.0;
        // F/(|t|^p+|s|^p) <= k (1+w^2) |gamma| e on J, with k = 2 for the quartic and 1 for the quadratic.
        const double k = quart ? 2.0 : 1.0;
        const double e = opt.e ? *opt.e : 0.8 * f2_bound(p, p) / (k * (1.0 + wmax2) * gsup);
        if (!(e > 0.0)) {
            throw InputError("scale e must be positive");
        }
        std::map<std::string, VertexFunction> t{{"gamma", VertexFunction(g, gamma)}};
        const std::string src = quart ? "e*(u^2+v^2)^2*(1+w^2)*abs(gamma)" : "e*(u^2+v^2)*(1+w^2)*abs(gamma)";
        t.emplace("e", VertexFunction(g, e));
        BuiltinProblem b{name, Nonlinearity::parse(g, src, std::move(t)), {}, 1, 1, p, p, std::nullopt, {}};
        b.spec.J = J;
        b.spec.L = std::vector<double>(g.size(), 4.0 * e * gmin);
        b.spec.delta = 1.0;
        if (!quart) {
            b.spec.d1 = 4.0 * e * gsup;
            b.spec.d2 = 4.0 * e * gsup;
        }
        b.parameters[quart ? "e" : "e*"] = e;
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
        BuiltinProblem b{name,
                         Nonlinearity::parse(g,
                                             "-xsq*(u*atan(u)-0.5*log(1+u^2)+v*atan(v)-0.5*log(1+v^2))",
                                             {{"xsq", VertexFunction(g, xsq)}}),
                         {}, 1, 1, 2.0, 2.0, std::nullopt, {}};
        b.spec.J = J;
        return b;
    }
    throw InputError("unknown builtin '" + name + "'");
}

} // namespace grapde
