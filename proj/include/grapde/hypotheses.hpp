#pragma once

#include "grapde/energy.hpp"

#include <numbers>
#include <string>
#include <vector>

namespace grapde {

enum class Verdict { pass, pass_sampled, fail, inconclusive, skipped };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::pass_sampled: return "pass (sampled)";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::skipped: return "skipped";
    }
    return "?";
}

inline bool passed(Verdict v) { return v == Verdict::pass || v == Verdict::pass_sampled; }

/// A sampled point where a condition was decided (or could not be evaluated).
struct Witness {
    std::string vertex;
    double t = 0.0;
    double s = 0.0;
    double w = 0.0;
    double value = 0.0; // the quantity that was compared
    double bound = 0.0; // what it was compared against
};

struct ConditionResult {
    std::string name;
    Verdict verdict = Verdict::skipped;
    std::string detail;
    std::optional<Witness> witness;
};

struct HypothesisReport {
    std::vector<ConditionResult> conditions;

    [[nodiscard]] const ConditionResult* find(std::string_view name) const
    {
        for (const auto& c : conditions) {
            if (c.name == name) {
                return &c;
            }
        }
        return nullptr;
    }
    [[nodiscard]] Verdict verdict(std::string_view name) const
    {
        const auto* c = find(name);
        return c ? c->verdict : Verdict::skipped;
    }
    /// True when every listed condition passed (sampled passes count).
    [[nodiscard]] bool all_pass(std::initializer_list<std::string_view> names) const
    {
        for (auto n : names) {
            if (!passed(verdict(n))) {
                return false;
            }
        }
        return true;
    }
};

struct SamplingConfig {
    std::vector<double> small_radii{1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
    std::vector<double> large_radii{1e1, 1e2, 1e3, 1e4};
    std::vector<double> mid_radii{1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0};
    std::size_t w_samples = 8;
    std::size_t angles = 32;
    std::size_t box_points = 64; // per axis; an even count keeps the origin off the grid
    double box_half_width = 10.0;
    std::size_t delta_samples = 64;
    double rel_tol = 1e-12;
};

namespace detail {

/// Evaluation context shared by the individual condition checks.
struct Screen {
    const Nonlinearity& nl;
    const HypothesisSpec& spec;
    const WeightedGraph& g;
    double p;
    double q;
    const SamplingConfig& cfg;
    bool scalar;
    std::vector<double> ws;

    Screen(const Nonlinearity& nl_, const HypothesisSpec& spec_, double p_, double q_, const SamplingConfig& cfg_)
        : nl(nl_), spec(spec_), g(nl_.graph()), p(p_), q(q_), cfg(cfg_), scalar(nl_.arity() == 1),
          ws(spec_.J.samples(cfg_.w_samples))
    {
    }

    /// Points (t, s) on the circle of radius r (scalar: t = +-r).
    [[nodiscard]] std::vector<std::pair<double, double>> circle(double r) const
    {
        std::vector<std::pair<double, double>> out;
        if (scalar) {
            out.emplace_back(r, 0.0);
            out.emplace_back(-r, 0.0);
            return out;
        }
        for (std::size_t k = 0; k < cfg.angles; ++k) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(cfg.angles);
            out.emplace_back(r * std::cos(a), r * std::sin(a));
        }
        return out;
    }

    [[nodiscard]] double F(std::size_t x, double t, double s, double w) const { return nl.eval(Which::F, x, t, s, w); }
    /// F_t t + F_s s.
    [[nodiscard]] double pairing(std::size_t x, double t, double s, double w) const
    {
        double r = nl.eval(Which::Fu, x, t, s, w) * t;
        if (!scalar) {
            r += nl.eval(Which::Fv, x, t, s, w) * s;
        }
        return r;
    }
    [[nodiscard]] double growth(double t, double s) const
    {
        return abs_pow(t, p) + (scalar ? 0.0 : abs_pow(s, q));
    }
    [[nodiscard]] Witness witness(std::size_t x, double t, double s, double w, double value, double bound) const
    {
        return {g.id(x), t, s, w, value, bound};
    }
};

/// Whether abs() anywhere wraps an expression in u, v or w.
inline bool depends_on_abs_argument(const Expr& e)
{
    switch (e.kind()) {
    case ExprKind::number:
    case ExprKind::variable:
    case ExprKind::coefficient: return false;
    case ExprKind::call:
        if (e.func() == Func::abs || e.func() == Func::sign) {
            const auto a = e.lhs();
            if (depends_on(a, Var::u) || depends_on(a, Var::v) || depends_on(a, Var::w)) {
                return true;
            }
        }
        return depends_on_abs_argument(e.lhs());
    case ExprKind::neg: return depends_on_abs_argument(e.lhs());
    default: return depends_on_abs_argument(e.lhs()) || depends_on_abs_argument(e.rhs());
    }
}

inline ConditionResult domain_failure(std::string name, const DomainError& e)
{
    return {std::move(name), Verdict::inconclusive, std::string("evaluation failed: ") + e.what(), std::nullopt};
}

inline std::string tag(const char* sys, const char* scalar, bool is_scalar)
{
    return is_scalar ? scalar : sys;
}

inline ConditionResult check_vanishing(const Screen& sc)
{
    const auto name = tag("F1", "F'1", sc.scalar);
    try {
        for (std::size_t x = 0; x < sc.g.size(); ++x) {
            for (double w : sc.ws) {
                const double f = sc.F(x, 0.0, 0.0, w);
                if (std::abs(f) > 1e-14) {
                    return {name, Verdict::fail, "F(x,0,0,w) != 0", sc.witness(x, 0, 0, w, f, 0.0)};
                }
            }
        }
    } catch (const DomainError& e) {
        return domain_failure(name, e);
    }
    const bool smooth = !depends_on_abs_argument(sc.nl.F());
    if (!smooth) {
        return {name, Verdict::pass_sampled, "F vanishes at the origin; abs() of a state variable may break C^1",
                std::nullopt};
    }
    return {name, Verdict::pass, "F vanishes at the origin on all vertices and sampled w", std::nullopt};
}

/// The small-amplitude growth bound: sup of F/(|t|^p+|s|^q) on shrinking circles.
inline ConditionResult check_small_growth(const Screen& sc, double bound)
{
    const auto name = tag("F2", "F'2", sc.scalar);
    std::string table;
    double last = -kInf;
    Witness worst{};
    try {
        for (double r : sc.cfg.small_radii) {
            double sup = -kInf;
            for (std::size_t x = 0; x < sc.g.size(); ++x) {
                for (double w : sc.ws) {
                    for (auto [t, s] : sc.circle(r)) {
                        const double ratio = sc.F(x, t, s, w) / sc.growth(t, s);
                        if (ratio > sup) {
                            sup = ratio;
                            worst = sc.witness(x, t, s, w, ratio, bound);
                        }
                    }
                }
            }
            table += (table.empty() ? "" : ", ") + detail::format_number(r) + ":" + detail::format_number(sup);
            if (r == sc.cfg.small_radii.front()) {
                last = sup;
            }
        }
    } catch (const DomainError& e) {
        return domain_failure(name, e);
    }
    const std::string info = "limit bound " + detail::format_number(bound) + "; sup ratio by radius {" + table + "}";
    if (last < bound) {
        return {name, Verdict::pass_sampled, info, std::nullopt};
    }
    return {name, Verdict::fail, info, worst};
}

/// Superlinear growth at infinity: inf of F/(|t|^p+|s|^q) must grow along the ladder.
inline ConditionResult check_large_growth(const Screen& sc)
{
    const auto name = tag("F3", "F'3", sc.scalar);
    std::vector<double> infs;
    Witness worst{};
    try {
        for (double r : sc.cfg.large_radii) {
            double inf = kInf;
            for (std::size_t x = 0; x < sc.g.size(); ++x) {
                for (double w : sc.ws) {
                    for (auto [t, s] : sc.circle(r)) {
                        const double ratio = sc.F(x, t, s, w) / sc.growth(t, s);
                        if (ratio < inf) {
                            inf = ratio;
                            worst = sc.witness(x, t, s, w, ratio, 0.0);
                        }
                    }
                }
            }
            infs.push_back(inf);
        }
    } catch (const DomainError& e) {
        return domain_failure(name, e);
    }
    std::string table;
    bool increasing = infs.front() > 0.0;
    for (std::size_t k = 0; k < infs.size(); ++k) {
        table += (k ? ", " : "") + detail::format_number(sc.cfg.large_radii[k]) + ":" + detail::format_number(infs[k]);
        if (k > 0 && !(infs[k] > infs[k - 1])) {
            increasing = false;
        }
    }
    const bool grows = increasing && infs.back() >= 10.0 * infs.front();
    const std::string info = "inf ratio by radius {" + table + "}";
    if (grows) {
        return {name, Verdict::pass_sampled, info, std::nullopt};
    }
    return {name, Verdict::fail, info, worst};
}

/// liminf (F_t t + F_s s - max{p,q} F)/(|t|^g1 + |s|^g2) > 0 along the large ladder.
inline ConditionResult check_excess(const Screen& sc)
{
    const auto name = tag("F4", "F'4", sc.scalar);
    const double g1 = sc.spec.gamma1.value_or(sc.p);
    const double g2 = sc.spec.gamma2.value_or(sc.q);
    const double pq = sc.scalar ? sc.p : std::max(sc.p, sc.q);
    std::vector<double> infs;
    Witness worst{};
    try {
        for (double r : sc.cfg.large_radii) {
            double inf = kInf;
            for (std::size_t x = 0; x < sc.g.size(); ++x) {
                for (double w : sc.ws) {
                    for (auto [t, s] : sc.circle(r)) {
                        const double num = sc.pairing(x, t, s, w) - pq * sc.F(x, t, s, w);
                        const double den = abs_pow(t, g1) + (sc.scalar ? 0.0 : abs_pow(s, g2));
                        const double ratio = num / den;
                        if (ratio < inf) {
                            inf = ratio;
                            worst = sc.witness(x, t, s, w, ratio, 0.0);
                        }
                    }
                }
            }
            infs.push_back(inf);
        }
    } catch (const DomainError& e) {
        return domain_failure(name, e);
    }
    std::string table;
    bool ok = true;
    for (std::size_t k = 0; k < infs.size(); ++k) {
        table += (k ? ", " : "") + detail::format_number(sc.cfg.large_radii[k]) + ":" + detail::format_number(infs[k]);
        ok = ok && infs[k] > 0.0;
    }
    // A positive but collapsing sequence does not support a positive liminf.
    if (ok && infs.size() > 1 && infs.back() < 1e-3 * infs.front()) {
        ok = false;
    }
    const std::string info = "gamma1=" + detail::format_number(g1) + (sc.scalar ? "" : ", gamma2=" + detail::format_number(g2))
                               + (sc.spec.gamma1 ? "" : " (defaulted)") + "; inf ratio by radius {" + table + "}";
    if (ok) {
        return {name, Verdict::pass_sampled, info, std::nullopt};
    }
    return {name, Verdict::fail, info, worst};
}

/// Sample points for the pointwise inequalities: circles over the mid ladder.
template <class Fn>
inline std::optional<Witness> first_violation(const Screen& sc, Fn&& violates)
{
    for (double r : sc.cfg.mid_radii) {
        for (std::size_t x = 0; x < sc.g.size(); ++x) {
            for (double w : sc.ws) {
                for (auto [t, s] : sc.circle(r)) {
                    if (auto wt = violates(x, t, s, w)) {
                        return wt;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

inline ConditionResult check_ar(const Screen& sc)
{
    const auto name = tag("H1", "H'1", sc.scalar);
    if (!sc.spec.theta) {
        return {name, Verdict::skipped, "theta not supplied", std::nullopt};
    }
    const double theta = *sc.spec.theta;
    const double pq = sc.scalar ? sc.p : std::max(sc.p, sc.q);
    if (!(theta > pq)) {
        return {name, Verdict::fail, "theta must exceed " + detail::format_number(pq), std::nullopt};
    }
    try {
        auto v = first_violation(sc, [&](std::size_t x, double t, double s, double w) -> std::optional<Witness> {
            const double lhs = theta * sc.F(x, t, s, w);
            const double rhs = sc.pairing(x, t, s, w);
            if (lhs - rhs > sc.cfg.rel_tol * (std::abs(lhs) + std::abs(rhs)) + 1e-300) {
                return sc.witness(x, t, s, w, lhs, rhs);
            }
            return std::nullopt;
        });
        if (v) {
            return {name, Verdict::fail, "theta F exceeds F_t t + F_s s", v};
        }
    } catch (const DomainError& e) {
        return domain_failure(name, e);
    }
    return {name, Verdict::pass_sampled, "theta=" + detail::format_number(theta), std::nullopt};
}

inline ConditionResult check_upper(const Screen& sc)
{
    const auto name = tag("H2", "H'2", sc.scalar);
    const auto& sp = sc.spec;
    if (!sp.c1 || !sp.r1 || (!sc.scalar && (!sp.c2 || !sp.r2))) {
        return {name, Verdict::skipped, "c1/c2/r1/r2 not supplied", std::nullopt};
    }
    const double c1 = *sp.c1;
    const double r1 = *sp.r1;
    const double c2 = sp.c2.value_or(0.0);
    const double r2 = sp.r2.value_or(r1);
    const double pq = sc.scalar ? sc.p : std::max(sc.p, sc.q);
    if (!(std::min(r1, sc.scalar ? r1 : r2) > pq)) {
        return {name, Verdict::fail, "min{r1,r2} must exceed " + detail::format_number(pq), std::nullopt};
    }
    try {
        auto v = first_violation(sc, [&](std::size_t x, double t, double s, double w) -> std::optional<Witness> {
            const double lhs = sc.pairing(x, t, s, w);
            const double rhs = c1 * abs_pow(t, r1) + (sc.scalar ? 0.0 : c2 * abs_pow(s, r2));
            if (lhs - rhs > sc.cfg.rel_tol * (std::abs(lhs) + std::abs(rhs)) + 1e-300) {
                return sc.witness(x, t, s, w, lhs, rhs);
            }
            return std::nullopt;
        });
        if (v) {
            return {name, Verdict::fail, "F_t t + F_s s exceeds c1|t|^r1 + c2|s|^r2", v};
        }
    } catch (const DomainError& e) {
        return domain_failure(name, e);
    }
    return {name, Verdict::pass_sampled, "", std::nullopt};
}

/// F >= a(|(t,s)|) c(x) with a > 0, on the supplied a-samples or, without them,
/// on an empirical floor min F / c over each sampled circle.
inline ConditionResult check_floor(const Screen& sc)
{
    const auto name = tag("H3", "H'3", sc.scalar);
    std::vector<double> c(sc.g.size(), 1.0);
    if (sc.spec.c_fn) {
        c = *sc.spec.c_fn;
        for (std::size_t x = 0; x < c.size(); ++x) {
            if (!(c[x] > 0.0)) {
                return {name, Verdict::fail, "c(x) must be positive", sc.witness(x, 0, 0, 0, c[x], 0.0)};
            }
        }
    }
    std::vector<FloorSample> samples = sc.spec.a_floor;
    const bool empirical = samples.empty();
    if (empirical) {
        for (double r : sc.cfg.mid_radii) {
            samples.push_back({r, kNaN});
        }
    }
    try {
        for (const auto& smp : samples) {
            double floor = kInf;
            Witness at{};
            for (std::size_t x = 0; x < sc.g.size(); ++x) {
                for (double w : sc.ws) {
                    for (auto [t, s] : sc.circle(smp.r)) {
                        const double val = sc.F(x, t, s, w) / c[x];
                        if (val < floor) {
                            floor = val;
                            at = sc.witness(x, t, s, w, val * c[x], 0.0);
                        }
                    }
                }
            }
            const double a = empirical ? floor : smp.a;
            at.bound = a * c[sc.g.index_of(at.vertex).value()];
            if (!(a > 0.0)) {
                return {name, Verdict::fail, "no positive floor a(r) at r=" + detail::format_number(smp.r), at};
            }
            if (floor < a * (1.0 - sc.cfg.rel_tol)) {
                return {name, Verdict::fail, "F drops below a(r) c(x) at r=" + detail::format_number(smp.r), at};
            }
        }
    } catch (const DomainError& e) {
        return domain_failure(name, e);
    }
    return {name, Verdict::pass_sampled, empirical ? "empirical floor min F/c on each sampled circle" : "supplied a-samples",
            std::nullopt};
}

inline ConditionResult check_nonexistence_sign(const Screen& sc)
{
    const auto name = tag("sign", "sign'", sc.scalar);
    const std::size_t k = sc.cfg.box_points;
    const double B = sc.cfg.box_half_width;
    auto axis = [&](std::size_t i) { return -B + 2.0 * B * static_cast<double>(i) / static_cast<double>(k - 1); };
    std::size_t evaluated = 0;
    try {
        for (std::size_t x = 0; x < sc.g.size(); ++x) {
            for (double w : sc.ws) {
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t j = 0; j < (sc.scalar ? 1 : k); ++j) {
                        const double t = axis(i);
                        const double s = sc.scalar ? 0.0 : axis(j);
                        if (t == 0.0 && s == 0.0) {
                            continue;
                        }
                        ++evaluated;
                        const double val = sc.pairing(x, t, s, w);
                        if (!(val < 0.0)) {
                            return {name, Verdict::fail, "F_t t + F_s s is not negative", sc.witness(x, t, s, w, val, 0.0)};
                        }
                    }
                }
            }
        }
    } catch (const DomainError& e) {
        return domain_failure(name, e);
    }
    return {name, Verdict::pass_sampled,
            std::to_string(evaluated) + " grid points on [-" + detail::format_number(B) + "," + detail::format_number(B)
                + "]^" + (sc.scalar ? "1" : "2") + ", all negative",
            std::nullopt};
}

} // namespace detail

/// The spike pair (u*, v*) = (1_{x0}, 1_{x0}) norms: ||u*||^p + ||v*||^q.
inline double spike_norm_sum(const WeightedGraph& g, std::size_t x0, const OperatorOrder& o1,
                             const std::optional<OperatorOrder>& o2)
{
    const auto e = VertexFunction::indicator(g, x0);
    double s = kernel::w_norm_pow(g, e.values(), {o1, Potential::h1});
    if (o2) {
        s += kernel::w_norm_pow(g, e.values(), {*o2, Potential::h2});
    }
    return s;
}

/// Default spike vertex: argmax mu(x) L(x) (argmax mu without L); ties by order.
inline std::size_t default_spike_vertex(const WeightedGraph& g, const HypothesisSpec& spec)
{
    if (spec.x0) {
        const auto i = g.index_of(*spec.x0);
        if (!i) {
            throw InputError("x0 names unknown vertex '" + *spec.x0 + "'");
        }
        return *i;
    }
    std::size_t best = 0;
    double best_val = -kInf;
    for (std::size_t x = 0; x < g.size(); ++x) {
        const double val = g.mu(x) * (spec.L ? spec.L->at(x) : 1.0);
        if (val > best_val) {
            best_val = val;
            best = x;
        }
    }
    return best;
}

namespace detail {

/// Positivity near the origin at the spike vertex: F(x0,t,t,w) >= L(x0) t^p on (0, delta),
/// for the system; the scalar form is checked at every vertex as literally stated.
inline std::vector<ConditionResult> check_spike_floor(const Screen& sc, const OperatorOrder& o1,
                                                      const std::optional<OperatorOrder>& o2)
{
    std::vector<ConditionResult> out;
    const auto name = tag("H4", "H'4", sc.scalar);
    if (!sc.spec.L || !sc.spec.delta) {
        out.push_back({name, Verdict::skipped, "L or delta not supplied", std::nullopt});
        return out;
    }
    if (!sc.scalar && sc.p != sc.q) {
        out.push_back({name, Verdict::skipped, "requires p = q", std::nullopt});
        return out;
    }
    const auto& L = *sc.spec.L;
    if (L.size() != sc.g.size()) {
        throw InputError("L must have one value per vertex");
    }
    const std::size_t x0 = default_spike_vertex(sc.g, sc.spec);
    const double Lx0 = L[x0];
    const double delta = *sc.spec.delta;
    const double spike = spike_norm_sum(sc.g, x0, o1, o2);
    const double need = spike / sc.p;
    const std::string where = "x0='" + sc.g.id(x0) + "'";
    if (!(Lx0 > 0.0)) {
        out.push_back({name, Verdict::fail, where + ": L(x0) must be positive", sc.witness(x0, 0, 0, 0, Lx0, 0.0)});
        return out;
    }
    const double muL = sc.g.mu(x0) * Lx0;
    if (!(muL > need)) {
        out.push_back({name, Verdict::fail,
                       where + ": mu(x0) L(x0) = " + format_number(muL) + " does not exceed spike norm sum / p = "
                           + format_number(need),
                       sc.witness(x0, 0, 0, 0, muL, need)});
        return out;
    }
    auto floor_at = [&](std::size_t x) -> std::optional<Witness> {
        for (std::size_t k = 1; k <= sc.cfg.delta_samples; ++k) {
            // Geometric spacing from delta*1e-6 up to just below delta.
            const double frac = static_cast<double>(k) / static_cast<double>(sc.cfg.delta_samples + 1);
            const double t = delta * std::pow(1e-6, 1.0 - frac);
            for (double w : sc.ws) {
                const double f = sc.F(x, t, sc.scalar ? 0.0 : t, w);
                const double bound = Lx0 * abs_pow(t, sc.p);
                if (f < bound * (1.0 - sc.cfg.rel_tol)) {
                    return sc.witness(x, t, sc.scalar ? 0.0 : t, w, f, bound);
                }
            }
        }
        return std::nullopt;
    };
    try {
        if (!sc.scalar) {
            const auto v = floor_at(x0);
            out.push_back({name, v ? Verdict::fail : Verdict::pass_sampled,
                           where + (v ? ": F(x0,t,t,w) < L(x0) t^p" : ": floor holds on sampled (0, delta)"), v});
            return out;
        }
        // Literal scalar form: the floor at every vertex, plus the single-vertex reading for comparison.
        std::optional<Witness> any;
        for (std::size_t x = 0; x < sc.g.size() && !any; ++x) {
            any = floor_at(x);
        }
        const auto at_x0 = floor_at(x0);
        std::string info = where + (any ? ": F(x,t,w) < L(x0) t^p at some vertex" : ": floor holds at every vertex");
        if (static_cast<bool>(any) != static_cast<bool>(at_x0)) {
            info += "; note: the single-vertex reading (x = x0 only) gives the opposite verdict";
        }
        out.push_back({name, any ? Verdict::fail : Verdict::pass_sampled, info, any});
    } catch (const DomainError& e) {
        out.push_back(domain_failure(name, e));
    }
    return out;
}

/// Lipschitz-type bounds on F_u, F_v on the box of half-width radius.
inline ConditionResult check_lipschitz(const Screen& sc, double radius, std::uint64_t seed)
{
    const std::string name = "H5";
    if (sc.scalar) {
        return {name, Verdict::skipped, "system condition", std::nullopt};
    }
    if (!sc.spec.d1 || !sc.spec.d2) {
        return {name, Verdict::skipped, "d1, d2 not supplied", std::nullopt};
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        return {name, Verdict::inconclusive, "sampling radius unavailable (needs C4)", std::nullopt};
    }
    const double d1 = *sc.spec.d1;
    const double d2 = *sc.spec.d2;
    const double cp = std::pow(2.0, 2.0 - sc.p);
    const double cap = cp / (std::pow(2.0, sc.p - 1.0) * total_measure(sc.g));
    std::string range_note;
    if (!(d1 < cap && d2 < cap)) {
        range_note = "; d1, d2 must lie below C_p/(2^{p-1}|V|) = " + format_number(cap);
    }
    // splitmix64: a small self-contained deterministic stream for the sample points.
    std::uint64_t state = seed;
    auto next = [&] {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    };
    try {
        for (int k = 0; k < 2000; ++k) {
            // (t1,t2) and (s1,s2) drawn inside the disc of the given radius.
            double t1 = next() * radius, t2 = next() * radius, s1 = next() * radius, s2 = next() * radius;
            const double nt = std::hypot(t1, t2), ns = std::hypot(s1, s2);
            if (nt > radius) {
                t1 *= radius / nt;
                t2 *= radius / nt;
            }
            if (ns > radius) {
                s1 *= radius / ns;
                s2 *= radius / ns;
            }
            for (std::size_t x = 0; x < sc.g.size(); ++x) {
                for (double w : sc.ws) {
                    const double du = std::abs(sc.nl.eval(Which::Fu, x, t2, s2, w) - sc.nl.eval(Which::Fu, x, t1, s1, w));
                    const double dv = std::abs(sc.nl.eval(Which::Fv, x, t2, s2, w) - sc.nl.eval(Which::Fv, x, t1, s1, w));
                    const double bu = d1 * abs_pow(t2 - t1, sc.p - 1.0);
                    const double bv = d2 * abs_pow(s2 - s1, sc.p - 1.0);
                    if (du > bu * (1.0 + 1e-9) + 1e-14) {
                        return {name, Verdict::fail, "F_u difference exceeds d1|t2-t1|^{p-1}" + range_note,
                                sc.witness(x, t1, t2, w, du, bu)};
                    }
                    if (dv > bv * (1.0 + 1e-9) + 1e-14) {
                        return {name, Verdict::fail, "F_v difference exceeds d2|s2-s1|^{p-1}" + range_note,
                                sc.witness(x, s1, s2, w, dv, bv)};
                    }
                }
            }
        }
    } catch (const DomainError& e) {
        return domain_failure(name, e);
    }
    if (!range_note.empty()) {
        return {name, Verdict::fail, "Lipschitz bounds hold on samples" + range_note, std::nullopt};
    }
    return {name, Verdict::pass_sampled, "radius " + format_number(radius), std::nullopt};
}

} // namespace detail

/// Screens every hypothesis the instance data allows. Conditions whose
/// constants are missing are reported as skipped.
///
/// ord2 is ignored for a scalar nonlinearity. lipschitz_radius is the (H5)
/// sampling radius; pass NaN when C4 is unavailable.
inline HypothesisReport check_hypotheses(const Nonlinearity& nl, const HypothesisSpec& spec, const OperatorOrder& ord1,
                                         const OperatorOrder& ord2, const SamplingConfig& cfg = {},
                                         double lipschitz_radius = kNaN, std::uint64_t seed = 1)
{
    const bool scalar = nl.arity() == 1;
    const double p = ord1.s;
    const double q = scalar ? p : ord2.s;
    detail::Screen sc(nl, spec, p, q, cfg);
    const auto k = embedding_constants(nl.graph(), p, q);
    const double bound = scalar ? 1.0 / (p * std::pow(k.K1, p))
                                : std::min(1.0 / (p * std::pow(k.K1, p)), 1.0 / (q * std::pow(k.K2, q)));
    HypothesisReport r;
    r.conditions.push_back(detail::check_vanishing(sc));
    r.conditions.push_back(detail::check_small_growth(sc, bound));
    r.conditions.push_back(detail::check_large_growth(sc));
    r.conditions.push_back(detail::check_excess(sc));
    r.conditions.push_back(detail::check_ar(sc));
    r.conditions.push_back(detail::check_upper(sc));
    r.conditions.push_back(detail::check_floor(sc));
    const std::optional<OperatorOrder> o2 = scalar ? std::nullopt : std::optional<OperatorOrder>(ord2);
    for (auto& c : detail::check_spike_floor(sc, ord1, o2)) {
        r.conditions.push_back(std::move(c));
    }
    if (!scalar) {
        r.conditions.push_back(detail::check_lipschitz(sc, lipschitz_radius, seed));
    }
    r.conditions.push_back(detail::check_nonexistence_sign(sc));
    return r;
}

inline HypothesisReport check_hypotheses(const ProblemInstance& inst, const SamplingConfig& cfg = {},
                                         double lipschitz_radius = kNaN, std::uint64_t seed = 1)
{
    return check_hypotheses(inst.nl(), inst.spec(), inst.ord(0), inst.ord(inst.blocks() - 1), cfg, lipschitz_radius,
                            seed);
}

/// Continuity of an objective g: syntactic. Expressions built from continuous
/// primitives pass; division, log, sqrt and sign can introduce discontinuities
/// or undefined points and make the verdict inconclusive.
inline ConditionResult check_objective_continuity(const Nonlinearity& g)
{
    const auto& e = g.F();
    for (auto f : {Func::sign, Func::log, Func::sqrt}) {
        if (uses_function(e, f)) {
            return {"G", Verdict::inconclusive, std::string("uses ") + to_string(f) + "()", std::nullopt};
        }
    }
    if (uses_kind(e, ExprKind::div)) {
        return {"G", Verdict::inconclusive, "uses division", std::nullopt};
    }
    return {"G", Verdict::pass, "composed of continuous primitives", std::nullopt};
}

/// Sampled midpoint convexity of w -> g(x,u,w) for a scalar objective.
inline ConditionResult check_objective_convexity(const Nonlinearity& g, const Interval& J,
                                                 const std::vector<double>& u_samples, std::size_t w_samples = 16)
{
    const auto ws = J.samples(w_samples);
    try {
        for (std::size_t x = 0; x < g.graph().size(); ++x) {
            for (double u : u_samples) {
                for (double a : ws) {
                    for (double b : ws) {
                        const double mid = g.eval(Which::F, x, u, 0.0, 0.5 * (a + b));
                        const double avg = 0.5 * (g.eval(Which::F, x, u, 0.0, a) + g.eval(Which::F, x, u, 0.0, b));
                        if (mid > avg + 1e-12 * (1.0 + std::abs(avg))) {
                            return {"G'", Verdict::fail, "midpoint convexity in w violated",
                                    Witness{g.graph().id(x), u, 0.0, 0.5 * (a + b), mid, avg}};
                        }
                    }
                }
            }
        }
    } catch (const DomainError& e) {
        return detail::domain_failure("G'", e);
    }
    ConditionResult c = check_objective_continuity(g);
    if (c.verdict != Verdict::pass) {
        c.name = "G'";
        return c;
    }
    return {"G'", Verdict::pass_sampled, "continuous; midpoint convex in w on samples", std::nullopt};
}

} // namespace grapde
