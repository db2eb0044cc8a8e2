#pragma once

#include "grapde/scalar.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace grapde::io {

using json = nlohmann::ordered_json;

namespace detail {

inline void only_fields(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed)
{
    if (!j.is_object()) {
        throw InputError(std::string(where) + " must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw InputError("unknown field '" + key + "' in " + std::string(where));
        }
    }
}

inline double number(const json& j, std::string_view key, std::string_view where)
{
    if (!j.is_number()) {
        throw InputError("field '" + std::string(key) + "' in " + std::string(where) + " must be a number");
    }
    return j.get<double>();
}

inline double number_or(const json& obj, const char* key, std::string_view where, double fallback)
{
    const auto it = obj.find(key);
    return it == obj.end() ? fallback : number(*it, key, where);
}

inline std::string text(const json& j, std::string_view key, std::string_view where)
{
    if (!j.is_string()) {
        throw InputError("field '" + std::string(key) + "' in " + std::string(where) + " must be a string");
    }
    return j.get<std::string>();
}

inline int integer(const json& j, std::string_view key, std::string_view where)
{
    if (!j.is_number_integer()) {
        throw InputError("field '" + std::string(key) + "' in " + std::string(where) + " must be an integer");
    }
    return j.get<int>();
}

inline json parse_text(std::string_view text, std::string_view what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string(what) + ": malformed JSON (" + e.what() + ")");
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Finite numbers as JSON numbers; NaN and infinities as null.
inline json num(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

inline json nums(std::span<const double> xs)
{
    json a = json::array();
    for (double x : xs) {
        a.push_back(num(x));
    }
    return a;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Graph files

inline GraphData graph_data_from_json(const json& j)
{
    detail::only_fields(j, "graph", {"vertices", "edges"});
    if (!j.contains("vertices") || !j["vertices"].is_array()) {
        throw InputError("graph needs a 'vertices' array");
    }
    GraphData d;
    for (const auto& v : j["vertices"]) {
        detail::only_fields(v, "vertex", {"id", "mu", "h1", "h2"});
        if (!v.contains("id")) {
            throw InputError("vertex without 'id'");
        }
        VertexRecord r;
        r.id = detail::text(v["id"], "id", "vertex");
        r.mu = detail::number_or(v, "mu", "vertex", 1.0);
        r.h1 = detail::number_or(v, "h1", "vertex", 1.0);
        r.h2 = detail::number_or(v, "h2", "vertex", 1.0);
        d.vertices.push_back(std::move(r));
    }
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) {
            throw InputError("'edges' must be an array");
        }
        for (const auto& e : j["edges"]) {
            detail::only_fields(e, "edge", {"a", "b", "w"});
            if (!e.contains("a") || !e.contains("b")) {
                throw InputError("edge needs endpoints 'a' and 'b'");
            }
            d.edges.push_back({detail::text(e["a"], "a", "edge"), detail::text(e["b"], "b", "edge"),
                               detail::number_or(e, "w", "edge", 1.0)});
        }
    }
    return d;
}

inline WeightedGraph parse_graph(std::string_view text)
{
    return WeightedGraph(graph_data_from_json(detail::parse_text(text, "graph")));
}

/// A graph file, or one of the names understood by graphs::named (p2, path3, complete4, ...).
inline WeightedGraph load_graph(const std::string& path_or_name)
{
    if (auto g = graphs::named(path_or_name)) {
        return *g;
    }
    return parse_graph(detail::read_file(path_or_name));
}

inline json to_json(const WeightedGraph& g)
{
    json j;
    j["vertices"] = json::array();
    for (const auto& v : g.data().vertices) {
        j["vertices"].push_back({{"id", v.id}, {"mu", v.mu}, {"h1", v.h1}, {"h2", v.h2}});
    }
    j["edges"] = json::array();
    for (const auto& e : g.data().edges) {
        j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"w", e.w}});
    }
    return j;
}

// ---------------------------------------------------------------------------
// Problem files

namespace detail {

/// A per-vertex table: a number (constant), an array in graph order or an id -> value object.
inline std::vector<double> table(const json& j, const WeightedGraph& g, std::string_view name)
{
    if (j.is_number()) {
        return std::vector<double>(g.size(), j.get<double>());
    }
    if (j.is_array()) {
        std::vector<double> out;
        for (const auto& x : j) {
            out.push_back(number(x, name, "table"));
        }
        if (out.size() != g.size()) {
            throw InputError("table '" + std::string(name) + "' must have one value per vertex");
        }
        return out;
    }
    if (j.is_object()) {
        std::map<std::string, double> m;
        for (const auto& [id, x] : j.items()) {
            m[id] = number(x, name, "table");
        }
        const auto f = VertexFunction::from_map(g, m);
        return {f.values().begin(), f.values().end()};
    }
    throw InputError("table '" + std::string(name) + "' must be a number, array or object");
}

inline void apply_hypotheses(const json& h, const WeightedGraph& g, HypothesisSpec& spec)
{
    only_fields(h, "hypotheses",
                {"theta", "c1", "c2", "r1", "r2", "gamma1", "gamma2", "delta", "L", "x0", "d1", "d2", "J", "a_floor",
                 "c"});
    auto opt = [&](const char* key, std::optional<double>& slot) {
        if (h.contains(key)) {
            slot = number(h[key], key, "hypotheses");
        }
    };
    opt("theta", spec.theta);
    opt("c1", spec.c1);
    opt("c2", spec.c2);
    opt("r1", spec.r1);
    opt("r2", spec.r2);
    opt("gamma1", spec.gamma1);
    opt("gamma2", spec.gamma2);
    opt("delta", spec.delta);
    opt("d1", spec.d1);
    opt("d2", spec.d2);
    if (h.contains("L")) {
        spec.L = table(h["L"], g, "L");
    }
    if (h.contains("c")) {
        spec.c_fn = table(h["c"], g, "c");
    }
    if (h.contains("x0")) {
        spec.x0 = text(h["x0"], "x0", "hypotheses");
        if (!g.index_of(*spec.x0)) {
            throw InputError("x0 names unknown vertex '" + *spec.x0 + "'");
        }
    }
    if (h.contains("J")) {
        const auto& J = h["J"];
        if (!J.is_array() || J.size() != 2) {
            throw InputError("J must be a two-element array [lo, hi]");
        }
        spec.J = {number(J[0], "J", "hypotheses"), number(J[1], "J", "hypotheses")};
    }
    if (h.contains("a_floor")) {
        spec.a_floor.clear();
        for (const auto& s : h["a_floor"]) {
            if (!s.is_array() || s.size() != 2) {
                throw InputError("a_floor entries must be [r, a] pairs");
            }
            spec.a_floor.push_back({number(s[0], "a_floor", "hypotheses"), number(s[1], "a_floor", "hypotheses")});
        }
    }
}

} // namespace detail

/// Problem description. Either "builtin" names a worked example (optionally
/// with "parameters") or "F" gives the nonlinearity with its coefficient tables.
inline BuiltinProblem problem_from_json(const json& j, const WeightedGraph& g)
{
    detail::only_fields(j, "problem",
                        {"builtin", "scalar", "F", "objective", "coefficients", "parameters", "m1", "m2", "p", "q",
                         "hypotheses"});
    if (j.contains("scalar") && !j["scalar"].is_boolean()) {
        throw InputError("field 'scalar' in problem must be true or false");
    }
    const bool scalar = j.contains("scalar") && j["scalar"].get<bool>();
    std::optional<BuiltinProblem> b;
    if (j.contains("builtin")) {
        if (j.contains("F") || j.contains("coefficients")) {
            throw InputError("problem gives both 'builtin' and 'F'");
        }
        BuiltinOptions opt;
        if (j.contains("parameters")) {
            const auto& p = j["parameters"];
            detail::only_fields(p, "parameters", {"e", "gamma", "z", "xsq"});
            if (p.contains("e")) {
                opt.e = detail::number(p["e"], "e", "parameters");
            }
            if (p.contains("gamma")) {
                opt.gamma = detail::table(p["gamma"], g, "gamma");
            }
            if (p.contains("z")) {
                opt.z = detail::table(p["z"], g, "z");
            }
            if (p.contains("xsq")) {
                opt.xsq = detail::table(p["xsq"], g, "xsq");
            }
        }
        const auto name = detail::text(j["builtin"], "builtin", "problem");
        b = scalar ? scalar_builtin(name, g, opt) : builtin(name, g, opt);
    } else {
        if (!j.contains("F")) {
            throw InputError("problem needs 'F' or 'builtin'");
        }
        if (j.contains("parameters")) {
            throw InputError("'parameters' only applies to builtin problems");
        }
        std::map<std::string, VertexFunction> tables;
        if (j.contains("coefficients")) {
            if (!j["coefficients"].is_object()) {
                throw InputError("'coefficients' must be an object of tables");
            }
            for (const auto& [name, t] : j["coefficients"].items()) {
                tables.emplace(name, VertexFunction(g, detail::table(t, g, name)));
            }
        }
        const int arity = scalar ? 1 : 2;
        auto nl = Nonlinearity::parse(g, detail::text(j["F"], "F", "problem"), tables, arity);
        std::optional<Nonlinearity> objective;
        if (j.contains("objective")) {
            objective = Nonlinearity::parse(g, detail::text(j["objective"], "objective", "problem"), tables, arity);
        }
        b = BuiltinProblem{"custom", std::move(nl), {}, 1, 1, 2.0, 2.0, std::move(objective), {}};
    }
    if (j.contains("objective") && j.contains("builtin")) {
        const int arity = scalar ? 1 : 2;
        b->objective = Nonlinearity::parse(g, detail::text(j["objective"], "objective", "problem"), b->nl.tables(), arity);
    }
    if (j.contains("m1")) {
        b->m1 = detail::integer(j["m1"], "m1", "problem");
    }
    if (j.contains("m2")) {
        b->m2 = detail::integer(j["m2"], "m2", "problem");
    }
    if (j.contains("p")) {
        b->p = detail::number(j["p"], "p", "problem");
    }
    if (j.contains("q")) {
        b->q = detail::number(j["q"], "q", "problem");
    }
    if (scalar) {
        b->q = b->p;
        b->m2 = b->m1;
    }
    if (j.contains("hypotheses")) {
        detail::apply_hypotheses(j["hypotheses"], g, b->spec);
    }
    OperatorOrder(b->m1, b->p);
    OperatorOrder(b->m2, b->q);
    b->spec.validate(b->p, b->q);
    return *b;
}

inline BuiltinProblem parse_problem(std::string_view text, const WeightedGraph& g)
{
    return problem_from_json(detail::parse_text(text, "problem"), g);
}

/// A problem file, or "builtin:NAME" (system) / "scalar:NAME" (scalar) for a worked example.
inline BuiltinProblem load_problem(const std::string& path_or_name, const WeightedGraph& g)
{
    if (path_or_name.rfind("builtin:", 0) == 0) {
        return builtin(path_or_name.substr(8), g);
    }
    if (path_or_name.rfind("scalar:", 0) == 0) {
        return scalar_builtin(path_or_name.substr(7), g);
    }
    return parse_problem(detail::read_file(path_or_name), g);
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const HypothesisSpec& s)
{
    json j;
    auto opt = [&](const char* key, const std::optional<double>& v) { j[key] = v ? detail::num(*v) : json(nullptr); };
    opt("theta", s.theta);
    opt("c1", s.c1);
    opt("c2", s.c2);
    opt("r1", s.r1);
    opt("r2", s.r2);
    opt("gamma1", s.gamma1);
    opt("gamma2", s.gamma2);
    opt("delta", s.delta);
    j["L"] = s.L ? detail::nums(*s.L) : json(nullptr);
    j["x0"] = s.x0 ? json(*s.x0) : json(nullptr);
    opt("d1", s.d1);
    opt("d2", s.d2);
    j["J"] = {s.J.lo, s.J.hi};
    j["a_floor"] = json::array();
    for (const auto& f : s.a_floor) {
        j["a_floor"].push_back({f.r, f.a});
    }
    j["c"] = s.c_fn ? detail::nums(*s.c_fn) : json(nullptr);
    return j;
}

inline json to_json(const BuiltinProblem& b)
{
    json j;
    j["name"] = b.name;
    j["scalar"] = b.nl.arity() == 1;
    j["F"] = to_string(b.nl.F());
    j["F_u"] = to_string(b.nl.Fu());
    j["F_v"] = to_string(b.nl.Fv());
    j["m1"] = b.m1;
    j["p"] = b.p;
    j["m2"] = b.m2;
    j["q"] = b.q;
    j["objective"] = b.objective ? json(to_string(b.objective->F())) : json(nullptr);
    j["parameters"] = json::object();
    for (const auto& [k, v] : b.parameters) {
        j["parameters"][k] = detail::num(v);
    }
    j["coefficients"] = json::object();
    for (const auto& [k, v] : b.nl.tables()) {
        j["coefficients"][k] = detail::nums(v.values());
    }
    j["hypotheses"] = to_json(b.spec);
    return j;
}

inline json to_json(const EmbeddingConstants& k)
{
    return {{"b", detail::num(k.b)},           {"d", detail::num(k.d)},         {"K1", detail::num(k.K1)},
            {"K2", detail::num(k.K2)},         {"mu_min", detail::num(k.mu_min)}, {"h1_min", detail::num(k.h1_min)},
            {"h2_min", detail::num(k.h2_min)}, {"volume", detail::num(k.volume)}};
}

inline json to_json(const ConditionResult& c)
{
    json j{{"name", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}};
    if (c.witness) {
        const auto& w = *c.witness;
        j["witness"] = {{"vertex", w.vertex}, {"t", detail::num(w.t)},         {"s", detail::num(w.s)},
                        {"w", detail::num(w.w)}, {"value", detail::num(w.value)}, {"bound", detail::num(w.bound)}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

inline json to_json(const HypothesisReport& r)
{
    json a = json::array();
    for (const auto& c : r.conditions) {
        a.push_back(to_json(c));
    }
    return a;
}

inline json state_json(const std::optional<StatePair>& s, bool scalar)
{
    if (!s) {
        return nullptr;
    }
    json j{{"u", detail::nums(s->u.values())}};
    j["v"] = scalar ? json(nullptr) : detail::nums(s->v.values());
    return j;
}

inline json to_json(const BoundCertificate& c, bool scalar)
{
    json j;
    j["lower_name"] = c.lower_name;
    j["upper_name"] = c.upper_name;
    j["lower"] = detail::num(c.lower);
    j["upper"] = detail::num(c.upper);
    j["A"] = detail::nums(c.A);
    j["E0"] = detail::num(c.E0);
    j["endpoint"] = state_json(c.endpoint, scalar);
    j["t0"] = detail::num(c.t0);
    j["rho"] = detail::num(c.rho);
    j["rho_estimated"] = std::isfinite(c.rho);
    j["delta"] = detail::num(c.delta);
    j["x0"] = c.x0.empty() ? json(nullptr) : json(c.x0);
    j["norm"] = detail::num(c.norm);
    j["available"] = c.available;
    j["satisfied"] = c.satisfied;
    j["note"] = c.note;
    return j;
}

inline json to_json(const SolveReport& r, bool scalar)
{
    json j;
    j["kind"] = to_string(r.kind);
    j["w"] = detail::num(r.w);
    j["state"] = state_json(r.state, scalar);
    j["energy"] = detail::num(r.energy);
    j["residual"] = detail::num(r.residual);
    j["norm"] = detail::num(r.norm);
    j["iterations"] = r.iterations;
    j["evaluations"] = r.evaluations;
    j["converged"] = r.converged;
    j["warm_started"] = r.warm_started;
    j["flags"] = r.flags;
    j["certificate"] = to_json(r.certificate, scalar);
    return j;
}

inline json to_json(const Branch& b, bool scalar)
{
    json j;
    j["kind"] = to_string(b.kind);
    j["mode"] = to_string(b.mode);
    j["grid"] = detail::nums(b.grid);
    j["jumps"] = detail::nums(b.jumps);
    j["endpoint_t"] = b.endpoint ? detail::num(b.endpoint->t) : json(nullptr);
    j["rho"] = detail::num(b.rho);
    j["reports"] = json::array();
    for (const auto& r : b.reports) {
        j["reports"].push_back(to_json(r, scalar));
    }
    return j;
}

inline json to_json(const ContinuityReport& c)
{
    json j;
    j["max_jump"] = c.max_jump ? detail::num(*c.max_jump) : json(nullptr);
    j["rows"] = json::array();
    for (const auto& r : c.rows) {
        j["rows"].push_back(
            {{"w0", r.w0}, {"w1", r.w1}, {"jump", detail::num(r.jump)}, {"ratio", detail::num(r.ratio)}});
    }
    j["total"] = c.total;
    j["converged"] = c.converged;
    j["coverage"] = c.coverage;
    j["full_coverage"] = c.full_coverage;
    j["out_of_bounds"] = detail::nums(c.out_of_bounds);
    j["all_in_bounds"] = c.all_in_bounds;
    j["limit_w"] = c.limit_w ? detail::num(*c.limit_w) : json(nullptr);
    j["limit_difference"] = detail::num(c.limit_difference);
    j["limit_reproduced"] = c.limit_reproduced;
    return j;
}

inline json to_json(const ControlReport& c, bool scalar)
{
    json j;
    j["objective_screen"] = to_json(c.continuity);
    j["psi"] = detail::nums(c.psi);
    j["best_index"] = c.best;
    j["w_bar"] = detail::num(c.w_bar);
    j["psi_bar"] = detail::num(c.psi_bar);
    j["state"] = state_json(c.branch.reports.at(c.best).state, scalar);
    j["branch"] = to_json(c.branch, scalar);
    return j;
}

inline json to_json(const UniquenessReport& u)
{
    json j;
    j["C_p"] = u.cp;
    j["monotonicity"] = {{"p", u.monotonicity.p},
                         {"samples", u.monotonicity.samples},
                         {"violations", u.monotonicity.violations},
                         {"min_ratio", detail::num(u.monotonicity.min_ratio)},
                         {"equality_at_antipodal", u.monotonicity.equality_at_antipodal}};
    j["lipschitz"] = to_json(u.lipschitz);
    j["lipschitz_radius"] = detail::num(u.lipschitz_radius);
    j["margin"] = detail::num(u.margin);
    j["certified"] = u.certified;
    j["base"] = to_json(u.base, false);
    j["starts"] = u.starts;
    j["converged_interior"] = u.converged_interior;
    j["spread"] = detail::num(u.spread);
    j["collapsed"] = u.collapsed;
    j["verdict"] = u.verdict;
    return j;
}

inline json to_json(const NonexistenceReport& r)
{
    json j;
    j["sign"] = to_json(r.sign);
    j["random_states"] = r.random_states;
    j["pairing_negative"] = r.pairing_negative;
    j["max_pairing"] = detail::num(r.max_pairing);
    j["multistart"] = r.multistart;
    j["converged"] = r.converged;
    j["max_norm"] = detail::num(r.max_norm);
    j["trivial_only"] = r.trivial_only;
    j["certified"] = r.certified;
    j["verdict"] = r.verdict;
    return j;
}

inline json to_json(const SolveConfig& c)
{
    return {{"tol", c.tol},
            {"max_iter", c.max_iter},
            {"string_nodes", c.string.nodes},
            {"string_max_iter", c.string.max_iter},
            {"string_tol", c.string.tol},
            {"armijo", c.string.armijo},
            {"w_grid", c.w_grid},
            {"rho", c.rho ? detail::num(*c.rho) : json(nullptr)},
            {"t0", c.t0 ? detail::num(*c.t0) : json(nullptr)},
            {"ball_ladder", c.ball_ladder},
            {"ball_samples", c.ball_samples},
            {"multistart", c.multistart},
            {"coincide_tol", c.coincide_tol},
            {"seed", c.seed},
            {"workers", c.workers}};
}

inline json to_json(const SamplingConfig& s)
{
    return {{"small_radii", s.small_radii}, {"large_radii", s.large_radii}, {"mid_radii", s.mid_radii},
            {"w_samples", s.w_samples},     {"angles", s.angles},           {"box_points", s.box_points},
            {"box_half_width", s.box_half_width}, {"delta_samples", s.delta_samples}, {"rel_tol", s.rel_tol}};
}

/// Branch table with columns w, norm_u, norm_v, energy, residual, C1, C2, psi.
/// C1/C2 hold whichever lower/upper certificate constants the solver produced;
/// missing values are empty fields.
inline std::string branch_csv(const ProblemInstance& tmpl, const Branch& b, const std::vector<double>& psi = {})
{
    auto cell = [](double x) { return std::isfinite(x) ? grapde::detail::format_number(x) : std::string(); };
    std::string out = "w,norm_u,norm_v,energy,residual,C1,C2,psi\n";
    for (std::size_t k = 0; k < b.reports.size(); ++k) {
        const auto& r = b.reports[k];
        double nu = kNaN;
        double nv = kNaN;
        if (r.x.size() == tmpl.dim()) {
            const auto norms = kernel::block_norms(tmpl, r.x);
            nu = norms[0];
            nv = tmpl.is_scalar() ? kNaN : norms[1];
        }
        out += cell(b.grid[k]) + ',' + cell(nu) + ',' + cell(nv) + ',' + cell(r.energy) + ',' + cell(r.residual) + ','
               + cell(r.certificate.lower) + ',' + cell(r.certificate.upper) + ','
               + cell(k < psi.size() ? psi[k] : kNaN) + '\n';
    }
    return out;
}

} // namespace grapde::io
