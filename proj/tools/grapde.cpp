// grapde: command-line front end for the graph poly-Laplacian solvers.
//
//   grapde constants --graph G --problem P
//   grapde check     --graph G --problem P [--kind mp|min]
//   grapde solve     --graph G --problem P [--kind mp|min] [--w X]
//   grapde sweep     --graph G --problem P [--kind mp|min] [--grid N] [--csv PATH]
//   grapde control   --graph G --problem P [--kind mp|min] [--grid N] [--csv PATH]
//   grapde nonexist  --graph G --problem P
//   grapde demo NAME [--graph G] [--scalar] [--e X]
//
// G is a graph file or a named graph (p2, path3, complete4, ...); P is a
// problem file, builtin:NAME or scalar:NAME. Exit status: 0 success or
// certified, 2 not certified or not converged, 1 usage or input error.

#include "grapde/grapde.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <sstream>

using namespace grapde;
using io::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Options {
    std::string command;
    std::string graph;
    std::string problem;
    std::string out;
    std::string csv;
    std::string kind = "mp";
    std::string demo;
    std::size_t grid = 21;
    double tol = 1e-8;
    double w = 0.0;
    std::optional<double> e;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    bool deterministic = false;
    bool scalar = false;
};

struct Outcome {
    json body = json::object();
    int code = 0;
    std::string csv;
    std::string message;
};

/// Why a single solve is not certified, empty when it is.
std::string solve_message(const SolveReport& r)
{
    std::ostringstream m;
    if (!r.converged) {
        m << "solver did not converge (residual " << r.residual << ")";
    } else if (!r.flags.empty()) {
        m << "solution flagged:";
        for (const auto& f : r.flags) {
            m << ' ' << f;
        }
    } else if (!r.ok()) {
        m << "solution has the wrong energy sign (" << r.energy << ")";
    } else if (!r.certificate.available) {
        m << "bounds unavailable: " << r.certificate.note;
    } else if (!r.certificate.satisfied) {
        m << "norm " << r.certificate.norm << " outside [" << r.certificate.lower << ", " << r.certificate.upper << "]";
    }
    return m.str();
}

std::string first_of(std::initializer_list<std::string> parts)
{
    for (const auto& s : parts) {
        if (!s.empty()) {
            return s;
        }
    }
    return {};
}

struct Loaded {
    WeightedGraph graph;
    BuiltinProblem problem;
};

Loaded load(const Options& o)
{
    if (o.graph.empty()) {
        throw InputError("--graph is required");
    }
    if (o.problem.empty()) {
        throw InputError("--problem is required");
    }
    auto g = io::load_graph(o.graph);
    auto b = io::load_problem(o.problem, g);
    return {std::move(g), std::move(b)};
}

std::string demo_graph(const Options& o)
{
    return o.graph.empty() ? "p2" : o.graph;
}

Loaded load_demo(const Options& o)
{
    auto g = io::load_graph(demo_graph(o));
    BuiltinOptions opt;
    opt.e = o.e;
    auto b = o.scalar ? scalar_builtin(o.demo, g, opt) : builtin(o.demo, g, opt);
    return {std::move(g), std::move(b)};
}

SolveConfig solve_config(const Options& o)
{
    SolveConfig c;
    c.tol = o.tol;
    c.seed = o.seed;
    c.workers = std::max<std::size_t>(o.workers, 1);
    c.w_grid = o.grid;
    return c;
}

json graph_summary(const WeightedGraph& g)
{
    return {{"vertices", std::vector<std::string>(g.ids().begin(), g.ids().end())},
            {"edges", g.edge_count()},
            {"volume", total_measure(g)},
            {"warnings", std::vector<std::string>(g.warnings().begin(), g.warnings().end())}};
}

/// Conditions the chosen solver relies on.
std::vector<std::string> required_conditions(SolverKind kind, bool scalar)
{
    if (kind == SolverKind::mountain_pass) {
        return scalar ? std::vector<std::string>{"F'1", "F'2", "H'1", "H'2", "H'3"}
                      : std::vector<std::string>{"F1", "F2", "H1", "H2", "H3"};
    }
    return scalar ? std::vector<std::string>{"F'1", "F'2", "H'4"} : std::vector<std::string>{"F1", "F2", "H4"};
}

json check_section(const ProblemInstance& inst, SolverKind kind, const SamplingConfig& sampling, std::uint64_t seed,
                   bool& all_required)
{
    const auto rep = check_hypotheses(inst, sampling, kNaN, seed);
    const auto req = required_conditions(kind, inst.is_scalar());
    all_required = true;
    for (const auto& n : req) {
        all_required = all_required && passed(rep.verdict(n));
    }
    return {{"conditions", io::to_json(rep)}, {"required", req}, {"required_pass", all_required}};
}

/// Names the required conditions that did not pass, empty when all did.
std::string hypotheses_message(const json& section)
{
    std::string failed;
    for (const auto& c : section["conditions"]) {
        const auto name = c["name"].get<std::string>();
        const auto v = c["verdict"].get<std::string>();
        const auto& req = section["required"];
        if (std::find(req.begin(), req.end(), name) != req.end() && v != "pass" && v != "pass (sampled)") {
            failed += (failed.empty() ? "" : ", ") + name + " " + v;
        }
    }
    return failed.empty() ? failed : "required hypotheses not passed: " + failed;
}

json constants_section(const ProblemInstance& inst, const SolveConfig& cfg)
{
    const double p = inst.p();
    const double q = inst.q();
    const auto k = embedding_constants(inst.graph(), p, q);
    json j;
    j["embedding"] = io::to_json(k);
    j["small_growth_bound"] = inst.is_scalar() ? 1.0 / (p * std::pow(k.K1, p))
                                               : std::min(1.0 / (p * std::pow(k.K1, p)), 1.0 / (q * std::pow(k.K2, q)));
    j["C_p"] = monotonicity_constant(p);
    try {
        j["lower"] = {{"name", inst.is_scalar() ? "C'1" : "C1"}, {"value", grapde::detail::lower_bound(inst)}};
        if (!inst.is_scalar()) {
            const auto& sp = inst.spec();
            const auto A = mp_lower_bounds(p, q, *sp.c1, *sp.c2, *sp.r1, *sp.r2, grapde::detail::block_embedding(inst, 0),
                                           grapde::detail::block_embedding(inst, 1), k.volume);
            j["lower"]["A1"] = A[0];
            j["lower"]["A2"] = A[1];
        }
    } catch (const CertificationError& e) {
        j["lower"] = {{"name", inst.is_scalar() ? "C'1" : "C1"}, {"value", nullptr}, {"note", e.what()}};
    }
    try {
        const auto end = negative_endpoint(inst, cfg.w_grid);
        const auto c = bound_certificate_mp(inst, end, kNaN);
        j["upper"] = {{"name", c.upper_name}, {"value", io::detail::num(c.upper)}, {"E0", io::detail::num(c.E0)},
                      {"A", io::detail::nums(c.A)}, {"endpoint_t", end.t}, {"note", c.note}};
    } catch (const CertificationError& e) {
        j["upper"] = {{"name", inst.is_scalar() ? "C'2" : "C2"}, {"value", nullptr}, {"note", e.what()}};
    }
    return j;
}

Outcome run_constants(const Options& o)
{
    const auto L = load(o);
    const auto inst = instance_of(L.problem, o.w);
    Outcome out;
    out.body["graph"] = graph_summary(L.graph);
    out.body["problem"] = io::to_json(L.problem);
    out.body["constants"] = constants_section(inst, solve_config(o));
    return out;
}

Outcome run_check(const Options& o)
{
    const auto L = load(o);
    const auto inst = instance_of(L.problem, o.w);
    Outcome out;
    bool ok = false;
    out.body["graph"] = graph_summary(L.graph);
    out.body["problem"] = io::to_json(L.problem);
    out.body["hypotheses"] = check_section(inst, parse_solver_kind(o.kind), SamplingConfig{}, o.seed, ok);
    out.code = ok ? 0 : 2;
    out.message = hypotheses_message(out.body["hypotheses"]);
    return out;
}

SolveReport solve_one(const ProblemInstance& inst, SolverKind kind, const SolveConfig& cfg)
{
    return kind == SolverKind::mountain_pass ? mountain_pass_solve(inst, cfg) : local_min_solve(inst, cfg);
}

Outcome run_solve(const Options& o)
{
    const auto L = load(o);
    const auto inst = instance_of(L.problem, o.w);
    const auto cfg = solve_config(o);
    const auto r = solve_one(inst, parse_solver_kind(o.kind), cfg);
    Outcome out;
    out.body["graph"] = graph_summary(L.graph);
    out.body["problem"] = io::to_json(L.problem);
    out.body["solve"] = io::to_json(r, inst.is_scalar());
    out.code = r.ok() && r.certificate.satisfied ? 0 : 2;
    out.message = solve_message(r);
    return out;
}

Outcome sweep_outcome(const ProblemInstance& inst, SolverKind kind, const Options& o)
{
    const auto cfg = solve_config(o);
    const auto grid = uniform_grid(inst.spec().J, o.grid);
    const auto br = sweep(inst, grid, kind, cfg);
    const auto cont = branch_continuity_report(inst, br, cfg);
    Outcome out;
    out.body["branch"] = io::to_json(br, inst.is_scalar());
    out.body["continuity"] = io::to_json(cont);
    out.csv = io::branch_csv(inst, br);
    out.code = cont.full_coverage && cont.all_in_bounds ? 0 : 2;
    if (!cont.full_coverage) {
        out.message = "branch incomplete: " + std::to_string(cont.converged) + " of " + std::to_string(cont.total) +
                      " grid points solved";
    } else if (!cont.all_in_bounds) {
        out.message = std::to_string(cont.out_of_bounds.size()) + " branch points outside their bounds";
    }
    return out;
}

Outcome run_sweep(const Options& o)
{
    const auto L = load(o);
    auto out = sweep_outcome(instance_of(L.problem, L.problem.spec.J.lo), parse_solver_kind(o.kind), o);
    out.body["graph"] = graph_summary(L.graph);
    out.body["problem"] = io::to_json(L.problem);
    return out;
}

Outcome control_outcome(const BuiltinProblem& b, SolverKind kind, const Options& o)
{
    if (!b.objective) {
        throw InputError("control needs an objective in the problem");
    }
    const auto inst = instance_of(b, b.spec.J.lo);
    const auto grid = uniform_grid(inst.spec().J, o.grid);
    const auto cfg = solve_config(o);
    const auto c = inst.is_scalar() ? scalar_control(inst, *b.objective, grid, kind, cfg)
                                    : optimal_control(inst, *b.objective, grid, kind, cfg);
    Outcome out;
    out.body["control"] = io::to_json(c, inst.is_scalar());
    out.csv = io::branch_csv(inst, c.branch, c.psi);
    return out;
}

Outcome run_control(const Options& o)
{
    const auto L = load(o);
    auto out = control_outcome(L.problem, parse_solver_kind(o.kind), o);
    out.body["graph"] = graph_summary(L.graph);
    out.body["problem"] = io::to_json(L.problem);
    return out;
}

Outcome nonexist_outcome(const ProblemInstance& inst, const Options& o)
{
    const auto r = nonexistence_check(inst, SamplingConfig{}, solve_config(o));
    Outcome out;
    out.body["nonexistence"] = io::to_json(r);
    std::cerr << r.verdict << '\n';
    out.code = r.certified ? 0 : 2;
    if (!r.certified) {
        out.message = r.verdict;
    }
    return out;
}

Outcome run_nonexist(const Options& o)
{
    const auto L = load(o);
    auto out = nonexist_outcome(instance_of(L.problem, o.w), o);
    out.body["graph"] = graph_summary(L.graph);
    out.body["problem"] = io::to_json(L.problem);
    return out;
}

Outcome run_demo(const Options& o)
{
    const auto L = load_demo(o);
    const auto& b = L.problem;
    const auto inst = instance_of(b, o.w);
    const auto cfg = solve_config(o);
    Outcome out;
    if (o.demo == "mp-example") {
        bool hyp = false;
        out.body["hypotheses"] = check_section(inst, SolverKind::mountain_pass, SamplingConfig{}, o.seed, hyp);
        out.body["constants"] = constants_section(inst, cfg);
        const auto r = mountain_pass_solve(inst, cfg);
        out.body["solve"] = io::to_json(r, inst.is_scalar());
        auto sw = sweep_outcome(inst.at(b.spec.J.lo), SolverKind::mountain_pass, o);
        out.body["branch"] = std::move(sw.body["branch"]);
        out.body["continuity"] = std::move(sw.body["continuity"]);
        out.csv = std::move(sw.csv);
        out.code = hyp && r.ok() && r.certificate.satisfied && sw.code == 0 ? 0 : 2;
        out.message = first_of({hypotheses_message(out.body["hypotheses"]), solve_message(r), sw.message});
    } else if (o.demo == "localmin-example") {
        bool hyp = false;
        out.body["hypotheses"] = check_section(inst, SolverKind::local_min, SamplingConfig{}, o.seed, hyp);
        const auto r = local_min_solve(inst, cfg);
        out.body["solve"] = io::to_json(r, inst.is_scalar());
        out.code = hyp && r.ok() && r.certificate.satisfied ? 0 : 2;
        out.message = first_of({hypotheses_message(out.body["hypotheses"]), solve_message(r)});
    } else if (o.demo == "unique-example") {
        if (inst.is_scalar()) {
            throw InputError("unique-example has no scalar form");
        }
        const auto u = uniqueness_certificate(inst, cfg);
        out.body["uniqueness"] = io::to_json(u);
        out.code = u.certified && u.collapsed && u.base.ok() && u.base.certificate.satisfied ? 0 : 2;
        out.message = out.code == 0 ? "" : first_of({solve_message(u.base), u.verdict});
    } else if (o.demo == "control-objective") {
        auto c = control_outcome(b, SolverKind::mountain_pass, o);
        out.body["control"] = std::move(c.body["control"]);
        out.csv = std::move(c.csv);
    } else if (o.demo == "nonexist-example") {
        auto n = nonexist_outcome(inst, o);
        out.body["nonexistence"] = std::move(n.body["nonexistence"]);
        out.code = n.code;
        out.message = n.message;
    } else {
        throw InputError("unknown builtin '" + o.demo + "'");
    }
    out.body["graph"] = graph_summary(L.graph);
    out.body["problem"] = io::to_json(b);
    return out;
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw InputError("cannot write '" + path + "'");
    }
    f << text;
}

json header(const Options& o)
{
    json h;
    h["tool"] = "grapde";
    h["version"] = kVersion;
    h["command"] = o.command;
    json cfg = io::to_json(solve_config(o));
    cfg["kind"] = o.kind;
    cfg["grid"] = o.grid;
    cfg["w"] = o.w;
    cfg["graph"] = o.command == "demo" ? demo_graph(o) : o.graph;
    cfg["problem"] = o.problem;
    cfg["builtin"] = o.demo.empty() ? json(nullptr) : json(o.demo);
    cfg["scalar"] = o.scalar;
    cfg["e"] = o.e ? json(*o.e) : json(nullptr);
    cfg["deterministic"] = o.deterministic;
    cfg["sampling"] = io::to_json(SamplingConfig{});
    h["config"] = std::move(cfg);
    return h;
}

int run(const Options& o)
{
    const auto start = std::chrono::steady_clock::now();
    json report = header(o);
    Outcome out;
    std::string message;
    try {
        if (o.command == "constants") {
            out = run_constants(o);
        } else if (o.command == "check") {
            out = run_check(o);
        } else if (o.command == "solve") {
            out = run_solve(o);
        } else if (o.command == "sweep") {
            out = run_sweep(o);
        } else if (o.command == "control") {
            out = run_control(o);
        } else if (o.command == "nonexist") {
            out = run_nonexist(o);
        } else if (o.command == "demo") {
            out = run_demo(o);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        // certification and evaluation failures still produce a report
        std::cerr << "not certified: " << e.what() << '\n';
        out.code = 2;
        message = e.what();
    }
    report["status"] = out.code == 0 ? "certified" : "not-certified";
    report["exit_code"] = out.code;
    if (message.empty()) {
        message = out.code == 0 ? "certified" : out.message;
    }
    report["message"] = message;
    if (!o.deterministic) {
        report["timestamp"] = utc_timestamp();
        report["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    for (auto& [key, value] : out.body.items()) {
        report[key] = value;
    }
    try {
        write_text(o.out, report.dump(2) + "\n");
        if (!o.csv.empty()) {
            if (out.csv.empty()) {
                throw InputError("command '" + o.command + "' produces no table for --csv");
            }
            write_text(o.csv, out.csv);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return out.code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Solve, certify and sweep poly-Laplacian systems on weighted graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--graph", o.graph, "graph file or named graph (p2, path3, complete4, ...)");
        sub->add_option("--out", o.out, "JSON report path (stdout when omitted)");
        sub->add_option("--tol", o.tol, "residual tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "seed for all sampled choices");
        sub->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--grid", o.grid, "number of w values on J")->check(CLI::PositiveNumber);
        sub->add_option("--w", o.w, "parameter value for single solves");
        sub->add_option("--kind", o.kind, "solver kind")->check(CLI::IsMember({"mp", "min"}));
        sub->add_option("--csv", o.csv, "CSV branch table path");
        sub->add_flag("--deterministic", o.deterministic, "omit timestamps and timings from the report");
    };
    const std::pair<const char*, const char*> commands[] = {
        {"constants", "embedding and a-priori bound constants"},
        {"check", "screen the growth and sign hypotheses"},
        {"solve", "one critical point with its bound certificate"},
        {"sweep", "solution branch over the parameter interval"},
        {"control", "minimise the objective along the branch"},
        {"nonexist", "certify that only the trivial solution exists"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        common(sub);
        sub->add_option("--problem", o.problem, "problem file, builtin:NAME or scalar:NAME");
        sub->callback([&o, name] { o.command = name; });
    }
    auto* demo = app.add_subcommand("demo", "run a worked example end to end");
    common(demo);
    demo->add_option("name", o.demo, "builtin name")->required();
    demo->add_flag("--scalar", o.scalar, "use the single-unknown form");
    demo->add_option("--e", o.e, "scale parameter e of the local-minimum examples");
    demo->callback([&o] { o.command = "demo"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    return run(o);
}
