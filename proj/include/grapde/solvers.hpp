#pragma once

#include "grapde/energy.hpp"
#include "grapde/hypotheses.hpp"
#include "grapde/log.hpp"
#include "grapde/optim.hpp"
#include "grapde/parallel.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace grapde {

enum class SolverKind { mountain_pass, local_min };

inline const char* to_string(SolverKind k)
{
    return k == SolverKind::mountain_pass ? "mountain-pass" : "local-min";
}

inline SolverKind parse_solver_kind(std::string_view s)
{
    if (s == "mp" || s == "mountain-pass") {
        return SolverKind::mountain_pass;
    }
    if (s == "min" || s == "local-min") {
        return SolverKind::local_min;
    }
    throw InputError("unknown solver kind '" + std::string(s) + "' (expected mp or min)");
}

struct SolveConfig {
    double tol = 1e-8;
    std::size_t max_iter = 100000;
    optim::StringOptions string;
    std::size_t w_grid = 21;          // w-values on J the mountain-pass endpoint must serve
    std::optional<double> rho;        // ball radius override for local minima
    std::optional<double> t0;         // spike scale override for local minima
    std::size_t ball_ladder = 40;     // rungs 2^0 .. 2^-(ladder-1)
    std::size_t ball_samples = 21;    // per axis
    std::size_t multistart = 50;
    double coincide_tol = 1e-6;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
};

struct BoundCertificate {
    std::string lower_name = "C1";
    std::string upper_name = "C2";
    double lower = kNaN;
    double upper = kNaN;
    std::array<double, 6> A{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    double E0 = kNaN;
    std::optional<StatePair> endpoint;
    double t0 = kNaN;
    double rho = kNaN;
    double delta = kNaN;
    std::string x0;
    double norm = kNaN;
    bool available = false;
    bool satisfied = false;
    std::string note;
};

struct SolveReport {
    SolverKind kind = SolverKind::mountain_pass;
    double w = 0.0;
    Vec x;
    std::optional<StatePair> state;
    double energy = kNaN;
    double residual = kInf;
    double norm = kNaN;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
    bool warm_started = false;
    std::vector<std::string> flags;
    BoundCertificate certificate;

    [[nodiscard]] bool has_flag(std::string_view f) const
    {
        return std::find(flags.begin(), flags.end(), f) != flags.end();
    }
    /// Converged, on the expected side of zero energy and not stuck on the ball boundary.
    [[nodiscard]] bool ok() const
    {
        if (!converged) {
            return false;
        }
        return kind == SolverKind::mountain_pass ? energy > 0.0 && !has_flag("trivial-state")
                                                 : energy < 0.0 && !has_flag("boundary-minimum");
    }
};

namespace flag {
inline constexpr const char* type_uncertain = "type-uncertain";
inline constexpr const char* boundary_minimum = "boundary-minimum";
inline constexpr const char* nonnegative_energy = "nonnegative-energy";
inline constexpr const char* trivial_state = "trivial-state";
} // namespace flag

namespace detail {

/// Uniform doubles in [-1, 1) from a 64-bit Mersenne twister; the mapping is
/// spelled out so streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double symmetric() { return static_cast<double>(gen_() >> 11) * 0x1.0p-52 - 1.0; }
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 gen_;
};

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + index + 0x632be59bd9b4e019ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double max_abs_diff(const Vec& a, const Vec& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

/// (u*, v*) = (1_{x0}, 1_{x0}) as a flat state (u* alone for a scalar instance).
inline Vec spike(const ProblemInstance& inst, std::size_t x0)
{
    Vec x(inst.dim(), 0.0);
    for (std::size_t b = 0; b < inst.blocks(); ++b) {
        x[b * inst.n() + x0] = 1.0;
    }
    return x;
}

/// sup-norm embedding constant of block b's space, using that block's potential.
inline double block_embedding(const ProblemInstance& inst, std::size_t b)
{
    const auto& g = inst.graph();
    return std::pow(1.0 / (g.mu_min() * g.potential_min(inst.potential(b))), 1.0 / inst.ord(b).s);
}

inline double spec_value(const std::optional<double>& v, const char* name)
{
    if (!v) {
        throw CertificationError(std::string("constant ") + name + " not supplied");
    }
    return *v;
}

/// A polish that ends at under half the norm of where it started has slid
/// towards the trivial critical point at the origin.
inline bool collapsed(const ProblemInstance& inst, const Vec& x, const Vec& from)
{
    return kernel::state_norm(inst, x) < 0.5 * kernel::state_norm(inst, from);
}

/// Moved by more than a tenth of the starting norm. The polish may then have
/// reached a different, higher critical point than the mountain-pass one.
inline bool drifted(const ProblemInstance& inst, const Vec& x, const Vec& from)
{
    Vec d(x.size());
    std::transform(x.begin(), x.end(), from.begin(), d.begin(), std::minus<>());
    return kernel::state_norm(inst, d) > 0.1 * kernel::state_norm(inst, from);
}

inline void finish_report(const ProblemInstance& inst, SolveReport& r)
{
    r.w = inst.w();
    r.state = unflatten(inst, r.x);
    r.norm = kernel::state_norm(inst, r.x);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Bound constants

/// Lower bounds A1 (first entry) and A2 of the mountain-pass norm estimate.
inline std::array<double, 2> mp_lower_bounds(double p, double q, double c1, double c2, double r1, double r2, double b,
                                             double d, double volume)
{
    const double rmax = std::max(r1, r2);
    const double rmin = std::min(r1, r2);
    if (!(rmin > std::max(p, q))) {
        throw CertificationError("growth exponents violate min{r1,r2} > max{p,q}");
    }
    const double M = std::max(c1, c2) * std::max(std::pow(b, r1), std::pow(d, r2));
    auto term = [&](double two_pow, double denom) { return std::pow(1.0 / (std::pow(2.0, two_pow) * volume * M), 1.0 / denom); };
    const double A1 = std::min(term(p, rmax - q), term(p - 1.0, rmin - p));
    const double A2 = std::min(term(q, rmax - p), term(q - 1.0, rmin - q));
    return {A1, A2};
}

/// Upper bounds A3..A6 from the endpoint energy E0 = (1/p)||u0||^p + (1/q)||v0||^q.
inline std::array<double, 4> mp_upper_bounds(double p, double q, double theta, double E0)
{
    if (!(theta > p)) {
        throw CertificationError("theta must exceed p");
    }
    if (!(theta > q)) {
        throw CertificationError("theta must exceed q");
    }
    const double bp = p * theta * std::pow(2.0, p - 1.0) * E0 / (theta - p);
    const double bq = q * theta * std::pow(2.0, q - 1.0) * E0 / (theta - q);
    return {std::pow(bp, 1.0 / p), std::pow(bp, 1.0 / q), std::pow(bq, 1.0 / q), std::pow(bq, 1.0 / p)};
}

/// Upper bound C4 for the local minimum started from t0 (u*, v*).
inline double min_upper_bound(double p, double theta, double t0, double spike_norms_pow)
{
    if (!(theta > p)) {
        throw CertificationError("theta must exceed p");
    }
    return std::pow(theta * std::pow(2.0, p - 1.0) * std::pow(t0, p) * spike_norms_pow / (p * (theta - p)), 1.0 / p);
}

/// Scalar lower bound C'1 = (1/(2^p |V| c1 b^r1))^{1/(r1-p)}.
inline double scalar_lower_bound(double p, double c1, double r1, double b, double volume)
{
    if (!(r1 > p)) {
        throw CertificationError("growth exponent violates r1 > p");
    }
    return std::pow(1.0 / (std::pow(2.0, p) * volume * c1 * std::pow(b, r1)), 1.0 / (r1 - p));
}

/// Scalar upper bound C'2 = (theta 2^{p-1} ||u0||^p / (theta - p))^{1/p}.
inline double scalar_upper_bound(double p, double theta, double u0_norm_pow)
{
    if (!(theta > p)) {
        throw CertificationError("theta must exceed p");
    }
    return std::pow(theta * std::pow(2.0, p - 1.0) * u0_norm_pow / (theta - p), 1.0 / p);
}

/// Scalar local-minimum upper bound C'4 = (theta 2^{p-1} t0^p ||u*||^p / (theta - p))^{1/p}.
inline double scalar_min_upper_bound(double p, double theta, double t0, double spike_norm_pow)
{
    return scalar_upper_bound(p, theta, std::pow(t0, p) * spike_norm_pow);
}

namespace detail {

/// Lower bound shared by both solver kinds (C1, C3, C'1, C'3).
inline double lower_bound(const ProblemInstance& inst)
{
    const auto& sp = inst.spec();
    const double V = total_measure(inst.graph());
    if (inst.is_scalar()) {
        return scalar_lower_bound(inst.p(), spec_value(sp.c1, "c1"), spec_value(sp.r1, "r1"), block_embedding(inst, 0), V);
    }
    const auto A = mp_lower_bounds(inst.p(), inst.q(), spec_value(sp.c1, "c1"), spec_value(sp.c2, "c2"),
                                   spec_value(sp.r1, "r1"), spec_value(sp.r2, "r2"), block_embedding(inst, 0),
                                   block_embedding(inst, 1), V);
    return std::min(A[0], A[1]);
}

inline void judge(BoundCertificate& c, double norm)
{
    c.norm = norm;
    c.available = std::isfinite(c.lower) && std::isfinite(c.upper);
    if (!c.available) {
        c.satisfied = false;
        return;
    }
    if (c.lower > c.upper) {
        c.satisfied = false;
        if (c.note.empty()) {
            c.note = "degenerate certificate: " + c.lower_name + " > " + c.upper_name;
        }
        return;
    }
    c.satisfied = c.lower <= norm && norm <= c.upper;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Mountain pass

/// A state of negative energy for every w of a grid, on the ray through the spike pair.
struct Endpoint {
    Vec x;
    double t = 0.0;
    std::size_t x0 = 0;
    std::vector<double> ws;
};

inline Endpoint negative_endpoint(const ProblemInstance& inst, const std::vector<double>& ws)
{
    if (ws.empty()) {
        throw InputError("endpoint needs at least one w value");
    }
    std::vector<ProblemInstance> at;
    at.reserve(ws.size());
    for (double w : ws) {
        at.push_back(inst.at(w));
    }
    const std::size_t x0 = default_spike_vertex(inst.graph(), inst.spec());
    const Vec dir = detail::spike(inst, x0);
    double t = 1.0;
    for (int k = 0; k <= 60; ++k, t *= 2.0) {
        Vec x = dir;
        for (auto& v : x) {
            v *= t;
        }
        bool negative = true;
        for (const auto& a : at) {
            double e = kNaN;
            try {
                e = kernel::energy(a, x);
            } catch (const Error&) {
            }
            if (!(e < 0.0)) {
                negative = false;
                break;
            }
        }
        if (negative) {
            log::debug("endpoint t=", t, " at vertex ", inst.graph().id(x0));
            return {std::move(x), t, x0, ws};
        }
    }
    throw CertificationError("cannot certify (F3) numerically: energy along the spike ray at vertex '"
                             + inst.graph().id(x0) + "' stays nonnegative after 60 doublings");
}

inline Endpoint negative_endpoint(const ProblemInstance& inst, std::size_t w_grid = 21)
{
    return negative_endpoint(inst, inst.spec().J.samples(w_grid));
}

/// C1 <= ||state|| <= C2 (scalar: C'1, C'2) for a mountain-pass state.
inline BoundCertificate bound_certificate_mp(const ProblemInstance& inst, const Endpoint& end, double norm)
{
    BoundCertificate c;
    if (inst.is_scalar()) {
        c.lower_name = "C'1";
        c.upper_name = "C'2";
    }
    c.endpoint = unflatten(inst, end.x);
    c.x0 = inst.graph().id(end.x0);
    const auto& sp = inst.spec();
    std::vector<double> np;
    for (std::size_t b = 0; b < inst.blocks(); ++b) {
        np.push_back(kernel::w_norm_pow(inst.op(b), kernel::block(inst, end.x, b), inst.potential(b)));
    }
    try {
        if (inst.is_scalar()) {
            c.E0 = np[0] / inst.p();
            c.lower = detail::lower_bound(inst);
            c.upper = scalar_upper_bound(inst.p(), detail::spec_value(sp.theta, "theta"), np[0]);
        } else {
            const double p = inst.p();
            const double q = inst.q();
            c.E0 = np[0] / p + np[1] / q;
            const auto lo = mp_lower_bounds(p, q, detail::spec_value(sp.c1, "c1"), detail::spec_value(sp.c2, "c2"),
                                            detail::spec_value(sp.r1, "r1"), detail::spec_value(sp.r2, "r2"),
                                            detail::block_embedding(inst, 0), detail::block_embedding(inst, 1),
                                            total_measure(inst.graph()));
            const auto hi = mp_upper_bounds(p, q, detail::spec_value(sp.theta, "theta"), c.E0);
            c.A = {lo[0], lo[1], hi[0], hi[1], hi[2], hi[3]};
            c.lower = std::min(lo[0], lo[1]);
            c.upper = *std::max_element(hi.begin(), hi.end());
        }
    } catch (const CertificationError& e) {
        c.note = e.what();
    }
    detail::judge(c, norm);
    return c;
}

/// Mountain-pass critical point: string relaxation from 0 to the endpoint,
/// then a residual polish from the highest point of the string. With `start`
/// the polish runs from there first and the string is only used if that fails.
inline SolveReport mountain_pass_solve(const ProblemInstance& inst, const SolveConfig& cfg = {},
                                       const Endpoint* endpoint = nullptr, const Vec* start = nullptr)
{
    EnergyFunctional E(inst);
    optim::DescentOptions dopt;
    dopt.tol = cfg.tol;
    dopt.max_iter = cfg.max_iter;
    std::optional<Endpoint> own;
    if (!endpoint) {
        own = negative_endpoint(inst, cfg.w_grid);
        endpoint = &*own;
    }
    auto cold = [&] {
        SolveReport c;
        c.kind = SolverKind::mountain_pass;
        const Vec zero(inst.dim(), 0.0);
        auto s = optim::string_method(E, zero, endpoint->x, cfg.string);
        auto p = optim::polish_critical(E, s.peak_state, dopt);
        if (detail::collapsed(inst, p.x, s.peak_state)) {
            c.flags.emplace_back(flag::trivial_state);
        }
        c.x = std::move(p.x);
        c.energy = p.value;
        c.residual = p.residual;
        c.iterations = s.iterations + p.iterations;
        c.evaluations = s.evaluations + p.evaluations;
        c.converged = p.converged;
        log::debug("string ", s.iterations, " iterations, peak energy ", s.peak_energy, "; polish residual ",
                   p.residual);
        return c;
    };
    SolveReport r;
    r.kind = SolverKind::mountain_pass;
    bool done = false;
    if (start) {
        auto p = optim::polish_critical(E, *start, dopt);
        if (p.converged && p.value > 0.0 && !detail::collapsed(inst, p.x, *start)) {
            const bool far = detail::drifted(inst, p.x, *start);
            r.x = std::move(p.x);
            r.energy = p.value;
            r.residual = p.residual;
            r.iterations = p.iterations;
            r.evaluations = p.evaluations;
            r.converged = true;
            r.warm_started = true;
            done = true;
            if (far) {
                // keep the lower of the two levels
                auto c = cold();
                if (c.converged && c.flags.empty() && c.energy > 0.0 && c.energy < r.energy * (1.0 - 1e-9)) {
                    log::debug("warm start at w=", inst.w(), " reached a higher critical point, using cold start");
                    c.evaluations += r.evaluations;
                    r = std::move(c);
                }
            }
        } else {
            log::debug("warm start at w=", inst.w(), " failed (residual ", p.residual, ", energy ", p.value,
                       "), cold start");
        }
    }
    if (!done) {
        r = cold();
    }
    if (!(r.energy > 0.0)) {
        r.flags.emplace_back(flag::type_uncertain);
    }
    detail::finish_report(inst, r);
    r.certificate = bound_certificate_mp(inst, *endpoint, r.norm);
    return r;
}

// ---------------------------------------------------------------------------
// Local minimum

/// Largest rung of 2^-k with F(x,t,s,w) <= D (|t|^p + |s|^p) sampled over
/// |t| <= b rho, |s| <= d rho, every vertex and every w of the grid.
inline double ball_radius(const ProblemInstance& inst, const std::vector<double>& ws, const SolveConfig& cfg = {})
{
    const double p = inst.p();
    if (inst.p() != inst.q()) {
        throw InputError("ball radius needs p = q");
    }
    const double V = total_measure(inst.graph());
    const double b = detail::block_embedding(inst, 0);
    const double d = inst.is_scalar() ? 0.0 : detail::block_embedding(inst, 1);
    const double K1 = std::pow(V, 1.0 / p) * b;
    const double K2 = std::pow(V, 1.0 / p) * d;
    double D = 1.0 / (p * std::pow(K1, p));
    if (!inst.is_scalar()) {
        D = std::min(D, 1.0 / (p * std::pow(K2, p)));
    }
    D *= 0.9;
    const std::size_t k = std::max<std::size_t>(cfg.ball_samples, 2);
    const bool sys = !inst.is_scalar();
    double rho = 1.0;
    for (std::size_t rung = 0; rung < cfg.ball_ladder; ++rung, rho *= 0.5) {
        bool ok = true;
        try {
            for (std::size_t x = 0; x < inst.n() && ok; ++x) {
                for (double w : ws) {
                    for (std::size_t i = 0; i < k && ok; ++i) {
                        const double t = b * rho * (2.0 * static_cast<double>(i) / static_cast<double>(k - 1) - 1.0);
                        for (std::size_t j = 0; j < (sys ? k : 1); ++j) {
                            const double s =
                                sys ? d * rho * (2.0 * static_cast<double>(j) / static_cast<double>(k - 1) - 1.0) : 0.0;
                            const double F = inst.nl().eval(Which::F, x, t, s, w);
                            const double bound = D * (abs_pow(t, p) + (sys ? abs_pow(s, p) : 0.0));
                            if (F > bound * (1.0 + 1e-12)) {
                                ok = false;
                                break;
                            }
                        }
                    }
                }
            }
        } catch (const DomainError&) {
            ok = false;
        }
        if (ok) {
            return rho;
        }
    }
    throw CertificationError("(F2) margin not certifiable: no ladder radius down to "
                             + detail::format_number(2.0 * rho) + " satisfies the sampled bound");
}

inline double ball_radius(const ProblemInstance& inst, const SolveConfig& cfg = {})
{
    return ball_radius(inst, inst.spec().J.samples(cfg.w_grid), cfg);
}

/// Spike data for the local-minimum construction.
struct SpikeStart {
    std::size_t x0 = 0;
    Vec dir;
    double dir_norm = 0.0;     // ||(u*, v*)||
    double dir_norm_pow = 0.0; // ||u*||^p + ||v*||^p
    double t0 = 0.0;
    double delta = kInf;
};

inline SpikeStart spike_start(const ProblemInstance& inst, double rho, const SolveConfig& cfg = {})
{
    SpikeStart s;
    s.x0 = default_spike_vertex(inst.graph(), inst.spec());
    s.dir = detail::spike(inst, s.x0);
    s.dir_norm = kernel::state_norm(inst, s.dir);
    for (std::size_t b = 0; b < inst.blocks(); ++b) {
        s.dir_norm_pow += kernel::w_norm_pow(inst.op(b), kernel::block(inst, s.dir, b), inst.potential(b));
    }
    s.delta = inst.spec().delta.value_or(kInf);
    s.t0 = cfg.t0 ? *cfg.t0 : 0.5 * std::min(s.delta, rho / s.dir_norm);
    if (!(s.t0 > 0.0)) {
        throw InputError("spike scale t0 must be positive");
    }
    return s;
}

/// C3 <= ||state|| <= C4 (scalar: C'3, C'4) for a local minimum from t0 (u*, v*).
inline BoundCertificate bound_certificate_min(const ProblemInstance& inst, const SpikeStart& s, double rho, double norm)
{
    BoundCertificate c;
    c.lower_name = inst.is_scalar() ? "C'3" : "C3";
    c.upper_name = inst.is_scalar() ? "C'4" : "C4";
    c.t0 = s.t0;
    c.rho = rho;
    c.delta = s.delta;
    c.x0 = inst.graph().id(s.x0);
    try {
        if (inst.p() != inst.q()) {
            throw CertificationError("local-minimum bounds need p = q");
        }
        const double theta = detail::spec_value(inst.spec().theta, "theta");
        c.upper = inst.is_scalar() ? scalar_min_upper_bound(inst.p(), theta, s.t0, s.dir_norm_pow)
                                   : min_upper_bound(inst.p(), theta, s.t0, s.dir_norm_pow);
        c.lower = detail::lower_bound(inst);
    } catch (const CertificationError& e) {
        c.note = e.what();
    }
    detail::judge(c, norm);
    return c;
}

/// Descent inside the closed ball of radius rho (product norm), with radial retraction.
inline SolveReport local_min_from(const ProblemInstance& inst, const Vec& x_start, double rho, const SolveConfig& cfg)
{
    EnergyFunctional E(inst);
    optim::DescentOptions dopt;
    dopt.tol = cfg.tol;
    dopt.max_iter = cfg.max_iter;
    dopt.retract = [&inst, rho](Vec& x) {
        const double nx = kernel::state_norm(inst, x);
        if (nx <= rho) {
            return false;
        }
        for (auto& v : x) {
            v *= rho / nx;
        }
        return true;
    };
    auto d = optim::descend(E, x_start, dopt);
    SolveReport r;
    r.kind = SolverKind::local_min;
    r.x = std::move(d.x);
    r.energy = d.value;
    r.residual = d.residual;
    r.iterations = d.iterations;
    r.evaluations = d.evaluations;
    r.converged = d.converged && !d.constrained;
    if (d.constrained || kernel::state_norm(inst, r.x) >= rho * (1.0 - 1e-12)) {
        r.flags.emplace_back(flag::boundary_minimum);
    }
    if (!(r.energy < 0.0)) {
        r.flags.emplace_back(flag::nonnegative_energy);
    }
    detail::finish_report(inst, r);
    return r;
}

/// Local minimum of negative energy in the ball of radius rho, started from
/// t0 (u*, v*) (or from `start`). Pass rho = NaN to estimate it with ball_radius.
inline SolveReport local_min_solve(const ProblemInstance& inst, const SolveConfig& cfg = {}, double rho = kNaN,
                                   const Vec* start = nullptr)
{
    if (inst.p() != inst.q()) {
        throw InputError("local-minimum solver needs p = q");
    }
    if (!std::isfinite(rho)) {
        rho = cfg.rho ? *cfg.rho : ball_radius(inst, cfg);
    }
    const auto s = spike_start(inst, rho, cfg);
    Vec x0 = s.dir;
    for (auto& v : x0) {
        v *= s.t0;
    }
    SolveReport r;
    bool done = false;
    if (start) {
        r = local_min_from(inst, *start, rho, cfg);
        r.warm_started = true;
        done = r.ok();
    }
    if (!done) {
        r = local_min_from(inst, x0, rho, cfg);
    }
    r.certificate = bound_certificate_min(inst, s, rho, r.norm);
    return r;
}

// ---------------------------------------------------------------------------
// Uniqueness

/// Sampled check of (|x|^{p-2}x - |y|^{p-2}y)(x-y) >= C_p |x-y|^p with C_p = 2^{2-p}.
struct MonotonicityCheck {
    double p = 2.0;
    double cp = 1.0;
    std::size_t samples = 0;
    std::size_t violations = 0;
    double min_ratio = kInf; // LHS / (C_p |x-y|^p) over pairs with x != y
    bool equality_at_antipodal = false;
};

inline double monotonicity_constant(double p) { return std::pow(2.0, 2.0 - p); }

inline MonotonicityCheck check_monotonicity(double p, std::size_t per_axis = 100, double range = 2.0)
{
    MonotonicityCheck m;
    m.p = p;
    m.cp = monotonicity_constant(p);
    auto at = [&](std::size_t i) {
        return -range + 2.0 * range * static_cast<double>(i) / static_cast<double>(per_axis - 1);
    };
    for (std::size_t i = 0; i < per_axis; ++i) {
        for (std::size_t j = 0; j < per_axis; ++j) {
            const double x = at(i);
            const double y = at(j);
            ++m.samples;
            if (x == y) {
                continue;
            }
            const double lhs = (signed_pow(x, p) - signed_pow(y, p)) * (x - y);
            const double rhs = m.cp * abs_pow(x - y, p);
            const double ratio = lhs / rhs;
            m.min_ratio = std::min(m.min_ratio, ratio);
            if (ratio < 1.0 - 1e-12) {
                ++m.violations;
            }
            if (x == -y && std::abs(ratio - 1.0) <= 1e-12) {
                m.equality_at_antipodal = true;
            }
        }
    }
    return m;
}

struct UniquenessReport {
    double cp = 1.0;
    MonotonicityCheck monotonicity;
    ConditionResult lipschitz;
    double lipschitz_radius = kNaN;
    double margin = kNaN; // C_p / 2^{p-1} - max{d1,d2} |V|
    bool certified = false;
    SolveReport base;
    std::size_t starts = 0;
    std::size_t converged_interior = 0;
    double spread = kNaN; // max distance of converged interior solutions to the first
    bool collapsed = false;
    std::string verdict;
};

/// Multistart of the ball-constrained descent from random points of the ball.
inline std::vector<SolveReport> local_min_multistart(const ProblemInstance& inst, double rho, const SolveConfig& cfg)
{
    return parallel_map(cfg.multistart, cfg.workers, [&](std::size_t i) {
        detail::Rng rng(detail::stream_seed(cfg.seed, i));
        Vec x(inst.dim());
        for (auto& v : x) {
            v = rng.symmetric();
        }
        const double nx = kernel::state_norm(inst, x);
        const double target = rho * rng.unit();
        if (nx > 0.0) {
            for (auto& v : x) {
                v *= target / nx;
            }
        }
        return local_min_from(inst, x, rho, cfg);
    });
}

inline UniquenessReport uniqueness_certificate(const ProblemInstance& inst, const SolveConfig& cfg = {},
                                               const SamplingConfig& sampling = {})
{
    if (inst.p() != inst.q() || inst.is_scalar()) {
        throw InputError("uniqueness certificate needs a system with p = q");
    }
    UniquenessReport u;
    const double p = inst.p();
    u.cp = monotonicity_constant(p);
    u.monotonicity = check_monotonicity(p);
    const double rho = cfg.rho ? *cfg.rho : ball_radius(inst, cfg);
    u.base = local_min_solve(inst, cfg, rho);
    const auto k = embedding_constants(inst.graph(), p, p);
    const double scale = std::min(1.0 / (p * std::pow(k.K1, p)), 1.0 / (p * std::pow(k.K2, p)));
    u.lipschitz_radius = std::isfinite(u.base.certificate.upper) ? u.base.certificate.upper * scale : kNaN;
    detail::Screen sc(inst.nl(), inst.spec(), p, p, sampling);
    u.lipschitz = detail::check_lipschitz(sc, u.lipschitz_radius, cfg.seed);
    const auto& sp = inst.spec();
    if (sp.d1 && sp.d2) {
        u.margin = u.cp / std::pow(2.0, p - 1.0) - std::max(*sp.d1, *sp.d2) * k.volume;
    }
    u.certified = u.margin > 0.0 && u.monotonicity.violations == 0;

    const auto runs = local_min_multistart(inst, rho, cfg);
    u.starts = runs.size();
    const Vec* first = nullptr;
    u.spread = 0.0;
    for (const auto& r : runs) {
        if (!r.converged || r.has_flag(flag::boundary_minimum)) {
            continue;
        }
        ++u.converged_interior;
        if (!first) {
            first = &r.x;
        } else {
            u.spread = std::max(u.spread, detail::max_abs_diff(*first, r.x));
        }
    }
    if (u.converged_interior == 0) {
        u.spread = kNaN;
    }
    u.collapsed = u.converged_interior > 0 && u.spread <= cfg.coincide_tol;
    u.verdict = u.certified ? "unique (certified)" : "not certified";
    return u;
}

// ---------------------------------------------------------------------------
// Nonexistence

struct NonexistenceReport {
    ConditionResult sign;
    std::size_t random_states = 0;
    std::size_t pairing_negative = 0;
    double max_pairing = -kInf;
    std::size_t multistart = 0;
    std::size_t converged = 0;
    double max_norm = 0.0;
    bool trivial_only = false;
    bool certified = false;
    std::string verdict;
};

namespace detail {

/// Random state with entries of magnitude spread over several decades.
inline Vec random_state(Rng& rng, std::size_t dim)
{
    const double scale = std::pow(10.0, 3.0 * rng.symmetric());
    Vec x(dim);
    for (auto& v : x) {
        v = scale * rng.symmetric();
    }
    return x;
}

} // namespace detail

inline NonexistenceReport nonexistence_check(const ProblemInstance& inst, const SamplingConfig& sampling = {},
                                             const SolveConfig& cfg = {}, std::size_t random_states = 100,
                                             std::size_t multistart = 100)
{
    NonexistenceReport r;
    detail::Screen sc(inst.nl(), inst.spec(), inst.p(), inst.q(), sampling);
    r.sign = detail::check_nonexistence_sign(sc);
    const auto ws = sc.ws;

    detail::Rng rng(detail::stream_seed(cfg.seed, 0xfeed));
    for (std::size_t k = 0; k < random_states; ++k) {
        Vec x = detail::random_state(rng, inst.dim());
        if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
            x[0] = 1.0;
        }
        ++r.random_states;
        try {
            const double pr = kernel::nonlinear_pairing(inst.at(ws[k % ws.size()]), x);
            r.max_pairing = std::max(r.max_pairing, pr);
            if (pr < 0.0) {
                ++r.pairing_negative;
            }
        } catch (const DomainError&) {
            r.max_pairing = kNaN;
        }
    }

    const auto runs = parallel_map(multistart, cfg.workers, [&](std::size_t i) {
        detail::Rng local(detail::stream_seed(cfg.seed, 0x5eed0000 + i));
        const auto at = inst.at(ws[i % ws.size()]);
        EnergyFunctional E(at);
        optim::DescentOptions dopt;
        dopt.tol = cfg.tol;
        dopt.max_iter = cfg.max_iter;
        auto d = optim::descend(E, detail::random_state(local, inst.dim()), dopt);
        return std::pair<bool, double>{d.converged, kernel::state_norm(at, d.x)};
    });
    r.multistart = runs.size();
    for (const auto& [conv, nrm] : runs) {
        r.converged += conv ? 1 : 0;
        r.max_norm = std::max(r.max_norm, nrm);
    }
    r.trivial_only = r.converged == r.multistart && r.max_norm < 1e-6;
    r.certified = passed(r.sign.verdict) && r.pairing_negative == r.random_states;
    r.verdict = r.certified ? "nonexistence certified (sampled)" : "nonexistence not certified";
    return r;
}

} // namespace grapde
