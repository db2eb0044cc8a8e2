#pragma once

#include "grapde/solvers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace grapde {

enum class StartMode { warm, cold };

inline const char* to_string(StartMode m) { return m == StartMode::warm ? "warm" : "cold"; }

/// n uniform points on J (n >= 1).
inline std::vector<double> uniform_grid(const Interval& J, std::size_t n)
{
    if (n == 0) {
        throw InputError("grid needs at least one point");
    }
    return J.samples(n);
}

struct Branch {
    SolverKind kind = SolverKind::mountain_pass;
    StartMode mode = StartMode::warm;
    std::vector<double> grid;
    std::vector<SolveReport> reports;
    std::vector<double> jumps; // ||state(w_{k+1}) - state(w_k)||, NaN when either side failed
    std::optional<Endpoint> endpoint;
    double rho = kNaN;
};

namespace detail {

inline void check_grid(const ProblemInstance& tmpl, const std::vector<double>& grid)
{
    if (grid.empty()) {
        throw InputError("empty parameter grid");
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!tmpl.spec().J.contains(grid[k])) {
            throw InputError("grid value " + format_number(grid[k]) + " lies outside J");
        }
        if (k > 0 && !(grid[k] > grid[k - 1])) {
            throw InputError("grid must be strictly increasing");
        }
    }
}

inline SolveReport failed_report(SolverKind kind, double w, const std::string& why)
{
    SolveReport r;
    r.kind = kind;
    r.w = w;
    r.flags.push_back("error: " + why);
    return r;
}

} // namespace detail

/// Solves at every grid value. Mountain-pass certificates share one endpoint
/// that has negative energy on the whole grid; local minima share one radius.
inline Branch sweep(const ProblemInstance& tmpl, const std::vector<double>& grid, SolverKind kind,
                    const SolveConfig& cfg = {}, StartMode mode = StartMode::warm)
{
    detail::check_grid(tmpl, grid);
    Branch br;
    br.kind = kind;
    br.mode = mode;
    br.grid = grid;
    if (kind == SolverKind::mountain_pass) {
        br.endpoint = negative_endpoint(tmpl, grid);
    } else {
        br.rho = cfg.rho ? *cfg.rho : ball_radius(tmpl, grid, cfg);
    }
    auto solve = [&](std::size_t k, const Vec* start) {
        try {
            const auto inst = tmpl.at(grid[k]);
            return kind == SolverKind::mountain_pass ? mountain_pass_solve(inst, cfg, &*br.endpoint, start)
                                                     : local_min_solve(inst, cfg, br.rho, start);
        } catch (const Error& e) {
            return detail::failed_report(kind, grid[k], e.what());
        }
    };
    if (mode == StartMode::cold) {
        br.reports = parallel_map(grid.size(), cfg.workers, [&](std::size_t k) { return solve(k, nullptr); });
    } else {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const bool warm = k > 0 && br.reports[k - 1].ok();
            br.reports.push_back(solve(k, warm ? &br.reports[k - 1].x : nullptr));
            log::info("w=", grid[k], " residual ", br.reports.back().residual, " energy ", br.reports.back().energy);
        }
    }
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const auto& a = br.reports[k];
        const auto& b = br.reports[k + 1];
        if (a.ok() && b.ok()) {
            br.jumps.push_back(kernel::state_norm(tmpl, optim::lincomb(1.0, b.x, -1.0, a.x)));
        } else {
            br.jumps.push_back(kNaN);
        }
    }
    return br;
}

/// Largest finite jump, if any pair of neighbours both succeeded.
inline std::optional<double> max_jump(const Branch& br)
{
    std::optional<double> m;
    for (double j : br.jumps) {
        if (std::isfinite(j)) {
            m = m ? std::max(*m, j) : j;
        }
    }
    return m;
}

/// Largest max-abs difference between state(w) and state(-w) over grid pairs
/// mirrored about zero. NaN when the grid is not symmetric or a side failed.
inline double symmetry_defect(const Branch& br)
{
    const std::size_t n = br.grid.size();
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& a = br.reports[k];
        const auto& b = br.reports[n - 1 - k];
        if (std::abs(br.grid[k] + br.grid[n - 1 - k]) > 1e-12 || !a.ok() || !b.ok()) {
            return kNaN;
        }
        m = std::max(m, detail::max_abs_diff(a.x, b.x));
    }
    return m;
}

struct JumpRow {
    double w0 = 0.0;
    double w1 = 0.0;
    double jump = kNaN;
    double ratio = kNaN; // jump / (w1 - w0)
};

struct ContinuityReport {
    std::optional<double> max_jump;
    std::vector<JumpRow> rows;
    std::size_t total = 0;
    std::size_t converged = 0;
    double coverage = 0.0;
    bool full_coverage = false;
    std::vector<double> out_of_bounds; // w of converged states violating their certificate
    bool all_in_bounds = false;
    std::optional<double> limit_w;
    double limit_difference = kNaN;
    bool limit_reproduced = false;
};

/// Jump table, certificate coverage and a limit check: the state at an
/// interior grid value is re-solved from its left neighbour's state.
inline ContinuityReport branch_continuity_report(const ProblemInstance& tmpl, const Branch& br,
                                                 const SolveConfig& cfg = {})
{
    ContinuityReport c;
    c.total = br.reports.size();
    for (std::size_t k = 0; k < br.jumps.size(); ++k) {
        JumpRow row{br.grid[k], br.grid[k + 1], br.jumps[k], kNaN};
        if (std::isfinite(row.jump)) {
            row.ratio = row.jump / (row.w1 - row.w0);
        }
        c.rows.push_back(row);
    }
    c.max_jump = max_jump(br);
    for (const auto& r : br.reports) {
        if (!r.ok()) {
            continue;
        }
        ++c.converged;
        if (!r.certificate.satisfied) {
            c.out_of_bounds.push_back(r.w);
        }
    }
    c.coverage = c.total ? static_cast<double>(c.converged) / static_cast<double>(c.total) : 0.0;
    c.full_coverage = c.converged == c.total;
    c.all_in_bounds = c.converged > 0 && c.out_of_bounds.empty();

    const std::size_t n = br.reports.size();
    for (std::size_t off = 0; off < n; ++off) {
        const std::size_t k = n / 2 + off;
        if (k == 0 || k >= n || !br.reports[k].ok() || !br.reports[k - 1].ok()) {
            continue;
        }
        const auto inst = tmpl.at(br.grid[k]);
        const Vec& start = br.reports[k - 1].x;
        const auto r = br.kind == SolverKind::mountain_pass ? mountain_pass_solve(inst, cfg, &*br.endpoint, &start)
                                                            : local_min_solve(inst, cfg, br.rho, &start);
        c.limit_w = br.grid[k];
        c.limit_difference = r.ok() ? detail::max_abs_diff(r.x, br.reports[k].x) : kNaN;
        c.limit_reproduced = c.limit_difference <= cfg.coincide_tol;
        break;
    }
    return c;
}

struct ControlReport {
    Branch branch;
    ConditionResult continuity;
    std::vector<double> psi; // NaN at failed grid points
    std::size_t best = 0;
    double w_bar = kNaN;
    double psi_bar = kNaN;
};

/// Minimizes psi over the converged triples of a sweep; ties go to the smaller w.
inline ControlReport optimal_control(const ProblemInstance& tmpl, const Nonlinearity& objective,
                                     const std::vector<double>& grid, SolverKind kind, const SolveConfig& cfg = {},
                                     StartMode mode = StartMode::warm)
{
    ControlReport c;
    c.continuity = check_objective_continuity(objective);
    if (c.continuity.verdict == Verdict::fail) {
        throw InputError("objective fails the continuity screen: " + c.continuity.detail);
    }
    c.branch = sweep(tmpl, grid, kind, cfg, mode);
    const auto& reps = c.branch.reports;
    c.psi = parallel_map(reps.size(), cfg.workers, [&](std::size_t k) {
        if (!reps[k].ok()) {
            return kNaN;
        }
        return psi(tmpl.at(grid[k]), *reps[k].state, objective);
    });
    bool found = false;
    for (std::size_t k = 0; k < c.psi.size(); ++k) {
        if (std::isfinite(c.psi[k]) && (!found || c.psi[k] < c.psi_bar)) {
            found = true;
            c.best = k;
            c.psi_bar = c.psi[k];
            c.w_bar = grid[k];
        }
    }
    if (!found) {
        throw CertificationError("optimal control: no converged grid point");
    }
    return c;
}

} // namespace grapde
