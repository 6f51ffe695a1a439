#include "gdfractal/digraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

#include "gdfractal/errors.hpp"

namespace gdfractal {

Digraph Digraph::make(int vertex_count,
                      const std::vector<std::pair<VertexId, VertexId>>& edges) {
    Digraph g;
    g.vertex_count_ = vertex_count;
    g.out_.resize(vertex_count);
    for (const auto& [from, to] : edges) {
        if (from < 0 || from >= vertex_count || to < 0 || to >= vertex_count)
            throw std::out_of_range("edge endpoint outside the declared vertex set");
        EdgeId id = EdgeId(g.edges_.size());
        g.edges_.push_back({id, from, to});
        g.out_[size_t(from)].push_back(id);
    }
    return g;
}

std::pair<VertexId, int> Digraph::edge_rank(EdgeId e) const {
    const Edge& ed = edge(e);
    const auto& lst = out_[size_t(ed.from)];
    auto it = std::find(lst.begin(), lst.end(), e);
    return {ed.from, int(it - lst.begin()) + 1};
}

std::string Digraph::edge_label(EdgeId e) const {
    auto [v, k] = edge_rank(e);
    return "e" + std::to_string(v + 1) + "(" + std::to_string(k) + ")";
}

VertexId initial_vertex(const Digraph& g, const Path& p) {
    if (p.empty()) throw std::invalid_argument("empty path has no endpoints");
    return g.edge(p.edges.front()).from;
}

VertexId terminal_vertex(const Digraph& g, const Path& p) {
    if (p.empty()) throw std::invalid_argument("empty path has no endpoints");
    return g.edge(p.edges.back()).to;
}

bool is_chained(const Digraph& g, const Path& p) {
    for (size_t i = 0; i + 1 < p.edges.size(); ++i)
        if (g.edge(p.edges[i]).to != g.edge(p.edges[i + 1]).from) return false;
    return true;
}

bool is_circuit(const Digraph& g, const Path& p) {
    return !p.empty() && is_chained(g, p) && initial_vertex(g, p) == terminal_vertex(g, p);
}

std::string path_label(const Digraph& g, const Path& p) {
    if (p.empty()) return "(trivial)";
    std::string s;
    for (EdgeId e : p.edges) {
        if (!s.empty()) s += " ";
        s += g.edge_label(e);
    }
    return s;
}

std::vector<DegreeViolation> validate_graph(const Digraph& g) {
    std::vector<DegreeViolation> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (g.out_degree(v) < 2) out.push_back({v, g.out_degree(v)});
    return out;
}

std::vector<bool> reachable_set(const Digraph& g, VertexId u) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<VertexId> queue{u};
    seen[size_t(u)] = true;
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (EdgeId e : g.out(v)) {
            VertexId w = g.edge(e).to;
            if (!seen[size_t(w)]) {
                seen[size_t(w)] = true;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

bool strongly_connected(const Digraph& g) {
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        auto seen = reachable_set(g, u);
        if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) return false;
    }
    return true;
}

std::optional<Path> reachable(const Digraph& g, VertexId u, VertexId v) {
    if (u == v) return Path{};
    // BFS following out-lists in order; the first arrival is the shortest
    // path with the wanted tie-break
    std::vector<EdgeId> via(g.vertex_count(), -1);
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<VertexId> queue{u};
    seen[size_t(u)] = true;
    while (!queue.empty()) {
        VertexId w = queue.front();
        queue.pop_front();
        for (EdgeId e : g.out(w)) {
            VertexId x = g.edge(e).to;
            if (seen[size_t(x)]) continue;
            seen[size_t(x)] = true;
            via[size_t(x)] = e;
            if (x == v) {
                Path p;
                for (VertexId c = v; c != u; c = g.edge(via[size_t(c)]).from)
                    p.edges.push_back(via[size_t(c)]);
                std::reverse(p.edges.begin(), p.edges.end());
                return p;
            }
            queue.push_back(x);
        }
    }
    return std::nullopt;
}

namespace {

// all simple circuits (distinct vertices) within `allowed`, ordered by
// (length, edge sequence); each circuit is reported once, anchored at its
// smallest vertex
std::vector<Path> enumerate_simple_circuits(const Digraph& g, const std::vector<bool>& allowed) {
    std::vector<Path> found;
    for (VertexId start = 0; start < g.vertex_count(); ++start) {
        if (!allowed[size_t(start)]) continue;
        std::vector<bool> on_path(g.vertex_count(), false);
        Path current;
        std::function<void(VertexId)> dfs = [&](VertexId v) {
            on_path[size_t(v)] = true;
            for (EdgeId e : g.out(v)) {
                VertexId w = g.edge(e).to;
                if (!allowed[size_t(w)] || w < start) continue;
                if (w == start) {
                    current.edges.push_back(e);
                    found.push_back(current);
                    current.edges.pop_back();
                } else if (!on_path[size_t(w)]) {
                    current.edges.push_back(e);
                    dfs(w);
                    current.edges.pop_back();
                }
            }
            on_path[size_t(v)] = false;
        };
        dfs(start);
    }
    std::stable_sort(found.begin(), found.end(), [](const Path& a, const Path& b) {
        if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
        return a.edges < b.edges;
    });
    return found;
}

}  // namespace

std::optional<Path> circuit_avoiding(const Digraph& g, VertexId u) {
    std::vector<bool> allowed(g.vertex_count(), true);
    allowed[size_t(u)] = false;
    auto circuits = enumerate_simple_circuits(g, allowed);
    if (circuits.empty()) return std::nullopt;
    return circuits.front();
}

std::vector<Path> return_circuits(const Digraph& g, VertexId u) {
    std::vector<Path> found;
    std::vector<bool> on_path(g.vertex_count(), false);
    Path current;
    std::function<void(VertexId)> dfs = [&](VertexId v) {
        for (EdgeId e : g.out(v)) {
            VertexId w = g.edge(e).to;
            if (w == u) {
                current.edges.push_back(e);
                found.push_back(current);
                current.edges.pop_back();
            } else if (!on_path[size_t(w)]) {
                on_path[size_t(w)] = true;
                current.edges.push_back(e);
                dfs(w);
                current.edges.pop_back();
                on_path[size_t(w)] = false;
            }
        }
    };
    dfs(u);
    return found;
}

std::vector<Path> paths_from(const Digraph& g, VertexId u, int max_len, size_t budget) {
    if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
    std::vector<Path> out;
    std::vector<Path> frontier{Path{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Path> next;
        for (const Path& p : frontier) {
            VertexId v = p.empty() ? u : terminal_vertex(g, p);
            for (EdgeId e : g.out(v)) {
                Path q = p;
                q.edges.push_back(e);
                if (out.size() + next.size() >= budget)
                    throw DepthTooLarge("more than " + std::to_string(budget) +
                                        " paths up to length " + std::to_string(max_len));
                next.push_back(std::move(q));
            }
        }
        for (const Path& p : next) out.push_back(p);
        frontier = std::move(next);
    }
    return out;
}

bool all_circuits_through(const Digraph& g, VertexId u) {
    auto allowed = reachable_set(g, u);
    allowed[size_t(u)] = false;
    return enumerate_simple_circuits(g, allowed).empty();
}

std::vector<Path> simple_circuits_avoiding(const Digraph& g, VertexId u) {
    std::vector<bool> allowed(g.vertex_count(), true);
    allowed[size_t(u)] = false;
    return enumerate_simple_circuits(g, allowed);
}

}  // namespace gdfractal
