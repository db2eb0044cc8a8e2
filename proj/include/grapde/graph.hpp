#pragma once

#include "grapde/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace grapde {

struct VertexRecord {
    std::string id;
    double mu = 1.0;
    double h1 = 1.0;
    double h2 = 1.0;
};

struct EdgeRecord {
    std::string a;
    std::string b;
    double w = 1.0;
};

/// Raw, unvalidated description of a weighted graph (what the JSON file carries).
struct GraphData {
    std::vector<VertexRecord> vertices;
    std::vector<EdgeRecord> edges;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Checks the standing assumptions on a graph description.
///
/// Dangling edge endpoints, self-loops, duplicate vertex ids, an empty vertex
/// set and non-finite numbers are structural errors and throw InputError.
/// Non-positive measures, potentials or weights and duplicate edges are
/// collected as violations; isolated vertices only produce a warning.
inline ValidationReport validate(const GraphData& data)
{
    ValidationReport report;
    if (data.vertices.empty()) {
        throw InputError("graph has no vertices");
    }
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < data.vertices.size(); ++i) {
        const auto& v = data.vertices[i];
        if (!index.emplace(v.id, i).second) {
            throw InputError("duplicate vertex id '" + v.id + "'");
        }
        for (auto [name, value] : {std::pair{"mu", v.mu}, std::pair{"h1", v.h1}, std::pair{"h2", v.h2}}) {
            if (!std::isfinite(value)) {
                throw InputError(std::string("non-finite ") + name + " at vertex '" + v.id + "'");
            }
            if (value <= 0.0) {
                report.violations.push_back(std::string("non-positive ") + name + " at vertex '" + v.id + "'");
            }
        }
    }
    std::vector<bool> touched(data.vertices.size(), false);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : data.edges) {
        const auto ia = index.find(e.a);
        const auto ib = index.find(e.b);
        if (ia == index.end() || ib == index.end()) {
            throw InputError("dangling edge endpoint in edge {" + e.a + "," + e.b + "}");
        }
        if (ia->second == ib->second) {
            throw InputError("self-loop at vertex '" + e.a + "'");
        }
        if (!std::isfinite(e.w)) {
            throw InputError("non-finite weight on edge {" + e.a + "," + e.b + "}");
        }
        if (e.w <= 0.0) {
            report.violations.push_back("non-positive weight on edge {" + e.a + "," + e.b + "}");
        }
        const auto key = std::minmax(ia->second, ib->second);
        if (!seen.insert(key).second) {
            report.violations.push_back("duplicate edge {" + e.a + "," + e.b + "}");
        }
        touched[ia->second] = true;
        touched[ib->second] = true;
    }
    for (std::size_t i = 0; i < touched.size(); ++i) {
        if (!touched[i]) {
            report.warnings.push_back("isolated vertex '" + data.vertices[i].id + "'");
        }
    }
    return report;
}

/// Potential selector for the two component spaces.
enum class Potential { h1, h2 };

/// Immutable weighted finite graph with vertex measure and two potentials.
///
/// Copies share the underlying storage, so passing graphs by value is cheap and
/// safe across threads.
class WeightedGraph {
public:
    struct Neighbor {
        std::size_t vertex;
        double weight;
    };

    explicit WeightedGraph(GraphData data)
    {
        auto report = validate(data);
        if (!report.ok()) {
            std::string msg = "invalid graph:";
            for (const auto& v : report.violations) {
                msg += " " + v + ";";
            }
            throw InputError(msg);
        }
        auto core = std::make_shared<Core>();
        const std::size_t n = data.vertices.size();
        core->ids.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& v = data.vertices[i];
            core->ids.push_back(v.id);
            core->index.emplace(v.id, i);
            core->mu.push_back(v.mu);
            core->h1.push_back(v.h1);
            core->h2.push_back(v.h2);
        }
        std::vector<std::vector<Neighbor>> adj(n);
        for (const auto& e : data.edges) {
            const auto a = core->index.at(e.a);
            const auto b = core->index.at(e.b);
            adj[a].push_back({b, e.w});
            adj[b].push_back({a, e.w});
        }
        core->offsets.push_back(0);
        for (auto& row : adj) {
            std::sort(row.begin(), row.end(), [](const Neighbor& l, const Neighbor& r) { return l.vertex < r.vertex; });
            core->neighbors.insert(core->neighbors.end(), row.begin(), row.end());
            core->offsets.push_back(core->neighbors.size());
        }
        core->warnings = std::move(report.warnings);
        core->data = std::move(data);
        core_ = std::move(core);
    }

    [[nodiscard]] std::size_t size() const noexcept { return core_->ids.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return core_->neighbors.size() / 2; }

    [[nodiscard]] std::span<const std::string> ids() const noexcept { return core_->ids; }
    [[nodiscard]] const std::string& id(std::size_t i) const { return core_->ids.at(i); }

    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view id) const
    {
        const auto it = core_->index.find(std::string(id));
        if (it == core_->index.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    [[nodiscard]] std::span<const double> mu() const noexcept { return core_->mu; }
    [[nodiscard]] std::span<const double> h1() const noexcept { return core_->h1; }
    [[nodiscard]] std::span<const double> h2() const noexcept { return core_->h2; }
    [[nodiscard]] std::span<const double> potential(Potential which) const noexcept
    {
        return which == Potential::h1 ? h1() : h2();
    }
    [[nodiscard]] double mu(std::size_t i) const { return core_->mu[i]; }

    [[nodiscard]] std::span<const Neighbor> neighbors(std::size_t i) const
    {
        return {core_->neighbors.data() + core_->offsets[i], core_->offsets[i + 1] - core_->offsets[i]};
    }

    /// deg(x) = sum of incident edge weights.
    [[nodiscard]] double degree(std::size_t i) const
    {
        double d = 0.0;
        for (const auto& nb : neighbors(i)) {
            d += nb.weight;
        }
        return d;
    }

    [[nodiscard]] double mu_min() const { return *std::min_element(core_->mu.begin(), core_->mu.end()); }
    [[nodiscard]] double potential_min(Potential which) const
    {
        const auto h = potential(which);
        return *std::min_element(h.begin(), h.end());
    }

    [[nodiscard]] std::span<const std::string> warnings() const noexcept { return core_->warnings; }
    [[nodiscard]] const GraphData& data() const noexcept { return core_->data; }

    /// True when both graphs carry the same ordered vertex set.
    [[nodiscard]] bool same_vertices(const WeightedGraph& other) const
    {
        return core_ == other.core_ || core_->ids == other.core_->ids;
    }

private:
    struct Core {
        std::vector<std::string> ids;
        std::unordered_map<std::string, std::size_t> index;
        std::vector<double> mu, h1, h2;
        std::vector<Neighbor> neighbors;
        std::vector<std::size_t> offsets;
        std::vector<std::string> warnings;
        GraphData data;
    };
    std::shared_ptr<const Core> core_;

    friend class VertexFunction;
};

/// A real value per vertex, tied to the vertex set of one graph.
class VertexFunction {
public:
    explicit VertexFunction(const WeightedGraph& g, double fill = 0.0)
        : graph_(g), values_(g.size(), fill)
    {
    }

    VertexFunction(const WeightedGraph& g, std::vector<double> values)
        : graph_(g), values_(std::move(values))
    {
        if (values_.size() != g.size()) {
            throw InputError("vertex function has " + std::to_string(values_.size()) + " values, graph has "
                             + std::to_string(g.size()) + " vertices");
        }
    }

    /// Builds from an id -> value map, which must cover the vertex set exactly.
    static VertexFunction from_map(const WeightedGraph& g, const std::map<std::string, double>& values)
    {
        if (values.size() != g.size()) {
            throw InputError("vertex function domain does not match the graph's vertex set");
        }
        std::vector<double> v(g.size());
        for (const auto& [id, value] : values) {
            const auto i = g.index_of(id);
            if (!i) {
                throw InputError("vertex function refers to unknown vertex '" + id + "'");
            }
            v[*i] = value;
        }
        return {g, std::move(v)};
    }

    /// Indicator of vertex i.
    static VertexFunction indicator(const WeightedGraph& g, std::size_t i)
    {
        VertexFunction f(g);
        f.values_.at(i) = 1.0;
        return f;
    }

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] double at(std::string_view id) const
    {
        const auto i = graph_.index_of(id);
        if (!i) {
            throw InputError("unknown vertex '" + std::string(id) + "'");
        }
        return values_[*i];
    }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] const WeightedGraph& graph() const noexcept { return graph_; }

    [[nodiscard]] bool defined_on(const WeightedGraph& g) const { return graph_.same_vertices(g); }

    friend VertexFunction operator+(const VertexFunction& a, const VertexFunction& b)
    {
        a.require_same(b);
        auto r = a.values_;
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] += b.values_[i];
        }
        return {a.graph_, std::move(r)};
    }
    friend VertexFunction operator-(const VertexFunction& a, const VertexFunction& b)
    {
        a.require_same(b);
        auto r = a.values_;
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] -= b.values_[i];
        }
        return {a.graph_, std::move(r)};
    }
    friend VertexFunction operator*(double t, const VertexFunction& a)
    {
        auto r = a.values_;
        for (auto& x : r) {
            x *= t;
        }
        return {a.graph_, std::move(r)};
    }

private:
    void require_same(const VertexFunction& other) const
    {
        if (!graph_.same_vertices(other.graph_)) {
            throw InputError("vertex functions live on different graphs");
        }
    }

    WeightedGraph graph_;
    std::vector<double> values_;
};

/// (u, v) in the product space; both components live on the same graph.
struct StatePair {
    VertexFunction u;
    VertexFunction v;

    StatePair(VertexFunction u_, VertexFunction v_) : u(std::move(u_)), v(std::move(v_))
    {
        if (!u.graph().same_vertices(v.graph())) {
            throw InputError("state components live on different graphs");
        }
    }

    static StatePair zero(const WeightedGraph& g) { return {VertexFunction(g), VertexFunction(g)}; }
};

inline void require_on(const WeightedGraph& g, const VertexFunction& f)
{
    if (!f.defined_on(g)) {
        throw InputError("vertex function is not defined on this graph's vertex set");
    }
}

/// Integral over V: sum of mu(x) f(x).
inline double integral(const WeightedGraph& g, const VertexFunction& f)
{
    require_on(g, f);
    CompensatedSum s;
    for (std::size_t i = 0; i < g.size(); ++i) {
        s += g.mu(i) * f[i];
    }
    return s.value();
}

/// |V| = sum of mu(x).
inline double total_measure(const WeightedGraph& g)
{
    CompensatedSum s;
    for (double m : g.mu()) {
        s += m;
    }
    return s.value();
}

/// Standard graphs with unit measure, potentials and weights.
namespace graphs {

inline GraphData unit_vertices(std::size_t n, std::string_view prefix = "v")
{
    GraphData d;
    for (std::size_t i = 0; i < n; ++i) {
        d.vertices.push_back({std::string(prefix) + std::to_string(i), 1.0, 1.0, 1.0});
    }
    return d;
}

/// Path on n vertices.
inline WeightedGraph path(std::size_t n)
{
    auto d = unit_vertices(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        d.edges.push_back({d.vertices[i].id, d.vertices[i + 1].id, 1.0});
    }
    return WeightedGraph(std::move(d));
}

/// Complete graph on n vertices.
inline WeightedGraph complete(std::size_t n)
{
    auto d = unit_vertices(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d.edges.push_back({d.vertices[i].id, d.vertices[j].id, 1.0});
        }
    }
    return WeightedGraph(std::move(d));
}

/// Looks up "p2", "path3", "complete4", "path<n>", "complete<n>".
inline std::optional<WeightedGraph> named(std::string_view name)
{
    auto parse_n = [&](std::string_view prefix) -> std::optional<std::size_t> {
        if (name.substr(0, prefix.size()) != prefix || name.size() == prefix.size()) {
            return std::nullopt;
        }
        std::size_t n = 0;
        for (char c : name.substr(prefix.size())) {
            if (c < '0' || c > '9') {
                return std::nullopt;
            }
            n = n * 10 + static_cast<std::size_t>(c - '0');
        }
        if (n == 0 || n > 1000) {
            return std::nullopt;
        }
        return n;
    };
    if (name == "p2") {
        return path(2);
    }
    if (auto n = parse_n("path")) {
        return path(*n);
    }
    if (auto n = parse_n("complete")) {
        return complete(*n);
    }
    return std::nullopt;
}

} // namespace graphs

} // namespace grapde
