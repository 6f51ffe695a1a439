#include <doctest.h>

#include <random>
#include <set>

#include "gdfractal/digraph.hpp"
#include "gdfractal/errors.hpp"
#include "test_util.hpp"

using namespace gdfractal;
using namespace testutil;

namespace {

Digraph two_vertex_graph() {  // loop, cross, cross, loop
    return Digraph::make(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

Digraph three_vertex_graph() {  // the not-strongly-connected seven-edge instance
    return Digraph::make(3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {2, 0}, {2, 2}});
}

Digraph sink_loops_graph() {  // no path from vertex 3 back to 1 or 2
    return Digraph::make(3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 2}, {2, 2}});
}

}  // namespace

TEST_CASE("validate_graph flags out-degree below 2") {
    CHECK(validate_graph(Digraph::make(1, {{0, 0}, {0, 0}})).empty());
    CHECK(validate_graph(two_vertex_graph()).empty());
    auto violations = validate_graph(Digraph::make(1, {{0, 0}}));
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].vertex == 0);
    CHECK(violations[0].degree == 1);
}

TEST_CASE("strong connectivity") {
    CHECK(strongly_connected(two_vertex_graph()));
    CHECK_FALSE(strongly_connected(three_vertex_graph()));
    CHECK_FALSE(strongly_connected(sink_loops_graph()));
    CHECK(strongly_connected(Digraph::make(1, {{0, 0}})));
}

TEST_CASE("reachable returns shortest paths with deterministic ties") {
    auto p = reachable(three_vertex_graph(), 2, 0);
    REQUIRE(p.has_value());
    CHECK(p->edges == std::vector<EdgeId>{5});  // the single 3->1 edge

    CHECK_FALSE(reachable(sink_loops_graph(), 2, 0).has_value());

    auto trivial = reachable(two_vertex_graph(), 1, 1);
    REQUIRE(trivial.has_value());
    CHECK(trivial->empty());
}

TEST_CASE("circuit_avoiding") {
    auto at2 = circuit_avoiding(two_vertex_graph(), 0);
    REQUIRE(at2.has_value());
    CHECK(at2->edges == std::vector<EdgeId>{3});  // loop at the other vertex

    auto at1 = circuit_avoiding(sink_loops_graph(), 2);
    REQUIRE(at1.has_value());
    CHECK(at1->edges == std::vector<EdgeId>{0});  // loop at vertex 1 survives

    // only circuits pass through both vertices
    Digraph pingpong = Digraph::make(2, {{0, 1}, {0, 1}, {1, 0}, {1, 0}});
    CHECK_FALSE(circuit_avoiding(pingpong, 0).has_value());
}

TEST_CASE("return_circuits enumerates simple returning circuits") {
    auto loops = return_circuits(sink_loops_graph(), 2);
    REQUIRE(loops.size() == 2);
    CHECK(loops[0].edges == std::vector<EdgeId>{5});
    CHECK(loops[1].edges == std::vector<EdgeId>{6});

    auto circuits = return_circuits(two_vertex_graph(), 0);
    REQUIRE(circuits.size() == 2);
    CHECK(circuits[0].edges == std::vector<EdgeId>{0});
    CHECK(circuits[1].edges == std::vector<EdgeId>{1, 2});

    Digraph dag = Digraph::make(2, {{0, 1}, {0, 1}, {1, 1}, {1, 1}});
    CHECK(return_circuits(dag, 0).empty());
}

TEST_CASE("paths_from counts and order") {
    Digraph cantor = Digraph::make(1, {{0, 0}, {0, 0}});
    auto paths = paths_from(cantor, 0, 2);
    CHECK(paths.size() == 6);  // 2 + 4
    CHECK(paths[0].edges == std::vector<EdgeId>{0});
    CHECK(paths[2].edges == std::vector<EdgeId>{0, 0});

    CHECK(paths_from(two_vertex_graph(), 0, 1).size() == 2);
    CHECK(paths_from(three_vertex_graph(), 2, 1).size() == 3);

    CHECK_THROWS_AS(paths_from(cantor, 0, 30, 1000), DepthTooLarge);
}

TEST_CASE("all_circuits_through") {
    CHECK(all_circuits_through(sink_loops_graph(), 2));
    CHECK_FALSE(all_circuits_through(two_vertex_graph(), 0));
    CHECK(all_circuits_through(Digraph::make(1, {{0, 0}, {0, 0}}), 0));
}

TEST_CASE("simple circuit enumeration is ordered and chained") {
    auto circuits = simple_circuits_avoiding(three_vertex_graph(), 2);
    REQUIRE(circuits.size() == 3);
    CHECK(circuits[0].edges == std::vector<EdgeId>{0});
    CHECK(circuits[1].edges == std::vector<EdgeId>{3});
    CHECK(circuits[2].edges == std::vector<EdgeId>{1, 2});
    for (const auto& c : circuits) {
        CHECK(is_circuit(three_vertex_graph(), c));
    }
}

TEST_CASE("edge labels carry vertex and rank") {
    Digraph g = two_vertex_graph();
    CHECK(g.edge_label(0) == "e1(1)");
    CHECK(g.edge_label(1) == "e1(2)");
    CHECK(g.edge_label(3) == "e2(2)");
}

TEST_CASE("random graphs agree with brute force") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        Digraph g = random_graph(rng);
        CHECK(strongly_connected(g) == brute_strongly_connected(g));

        VertexId u = VertexId(rng() % g.vertex_count());
        std::vector<bool> allowed(g.vertex_count(), true);
        allowed[size_t(u)] = false;
        CHECK(circuit_avoiding(g, u).has_value() == brute_has_cycle(g, allowed));

        for (const Path& c : return_circuits(g, u)) {
            CHECK(is_circuit(g, c));
            CHECK(initial_vertex(g, c) == u);
            CHECK(c.length() <= size_t(g.vertex_count()));
            std::set<VertexId> seen;
            for (size_t i = 1; i < c.edges.size(); ++i) {
                VertexId mid = g.edge(c.edges[i]).from;
                CHECK(mid != u);
                CHECK(seen.insert(mid).second);
            }
        }

        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            auto p = reachable(g, u, v);
            CHECK(p.has_value() == brute_reachable(g, u, v));
            if (p && !p->empty()) {
                CHECK(is_chained(g, *p));
                CHECK(initial_vertex(g, *p) == u);
                CHECK(terminal_vertex(g, *p) == v);
            }
        }
    }
}
