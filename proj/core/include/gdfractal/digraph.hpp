#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gdfractal {

using VertexId = int;
using EdgeId = int;

struct Edge {
    EdgeId id;
    VertexId from, to;
};

/// Finite directed multigraph with per-vertex ordered out-edge lists. The
/// out-list order is fixed at construction and all queries are deterministic
/// with respect to it. Immutable after make().
class Digraph {
public:
    static Digraph make(int vertex_count, const std::vector<std::pair<VertexId, VertexId>>& edges);

    int vertex_count() const { return vertex_count_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[size_t(e)]; }
    const std::vector<EdgeId>& out(VertexId v) const { return out_[size_t(v)]; }
    int out_degree(VertexId v) const { return int(out_[size_t(v)].size()); }

    /// (vertex, rank) of an edge within its out-list, rank starting at 1.
    std::pair<VertexId, int> edge_rank(EdgeId e) const;
    std::string edge_label(EdgeId e) const;  // "e<vertex>(<rank>)" with 1-based vertex

private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> out_;
};

/// Edge sequence with chained endpoints. Empty paths appear only as the
/// trivial u-to-u connection returned by reachable().
struct Path {
    std::vector<EdgeId> edges;

    bool empty() const { return edges.empty(); }
    size_t length() const { return edges.size(); }
    friend bool operator==(const Path& a, const Path& b) { return a.edges == b.edges; }
};

VertexId initial_vertex(const Digraph& g, const Path& p);
VertexId terminal_vertex(const Digraph& g, const Path& p);
bool is_chained(const Digraph& g, const Path& p);
bool is_circuit(const Digraph& g, const Path& p);
std::string path_label(const Digraph& g, const Path& p);

struct DegreeViolation {
    VertexId vertex;
    int degree;
};

/// Empty iff every vertex has out-degree >= 2.
std::vector<DegreeViolation> validate_graph(const Digraph& g);

/// Every ordered vertex pair joined by a directed path (trivially true on a
/// single vertex).
bool strongly_connected(const Digraph& g);

/// Shortest directed path u -> v, ties broken by out-list order; the u == v
/// case yields the empty path, distinct from "none".
std::optional<Path> reachable(const Digraph& g, VertexId u, VertexId v);

/// A directed circuit visiting no occurrence of u, if one exists: delete u,
/// then pick the shortest cycle (out-list order tie-break).
std::optional<Path> circuit_avoiding(const Digraph& g, VertexId u);

/// All circuits u -> u whose intermediate vertices are pairwise distinct and
/// different from u, in depth-first out-list order.
std::vector<Path> return_circuits(const Digraph& g, VertexId u);

/// Paths of length 1..max_len leaving u in (length, out-list lexicographic)
/// order. Throws DepthTooLarge past the budget.
std::vector<Path> paths_from(const Digraph& g, VertexId u, int max_len,
                             size_t budget = 1000000);

/// True iff no circuit reachable from u avoids u (evaluated on the subgraph
/// reachable from u).
bool all_circuits_through(const Digraph& g, VertexId u);

/// All simple circuits (distinct vertices) that avoid u, ordered by
/// (length, edge sequence); the candidate list for the per-circuit
/// classification route.
std::vector<Path> simple_circuits_avoiding(const Digraph& g, VertexId u);

/// Subgraph induced by the vertices reachable from u, with original ids.
std::vector<bool> reachable_set(const Digraph& g, VertexId u);

}  // namespace gdfractal
