#include <doctest.h>

#include <map>

#include "gdfractal/errors.hpp"
#include "gdfractal/gaps.hpp"
#include "gdfractal/spec_io.hpp"
#include "test_util.hpp"

using namespace gdfractal;
using namespace testutil;

namespace {

MonomialSum ms(const std::string& s) { return MonomialSum::of(rq(s)); }

// independent middle-thirds construction: split [0,1] recursively
std::vector<std::pair<Rational, Rational>> middle_thirds(int m) {
    std::vector<std::pair<Rational, Rational>> level = {{Rational(0), Rational(1)}};
    for (int i = 0; i < m; ++i) {
        std::vector<std::pair<Rational, Rational>> next;
        for (const auto& [a, b] : level) {
            Rational third = (b - a) / 3;
            next.push_back({a, a + third});
            next.push_back({b - third, b});
        }
        level = std::move(next);
    }
    return level;
}

bool interval_inside(const ExactInterval& inner, const ExactInterval& outer,
                     const NumericOptions& opts) {
    return certified_sign(inner.left - outer.left, opts) != Sign::negative &&
           certified_sign(outer.right - inner.right, opts) != Sign::negative;
}

}  // namespace

TEST_CASE("level_approx on the middle-thirds system matches the recursion") {
    GdIfs f = build_gdifs(cantor_params());
    for (int m = 0; m <= 6; ++m) {
        IntervalSet set = level_approx(f, 0, m);
        auto expected = middle_thirds(m);
        REQUIRE(set.size() == expected.size());
        for (size_t i = 0; i < expected.size(); ++i) {
            CHECK(set.intervals[i].left == MonomialSum::of(expected[i].first));
            CHECK(set.intervals[i].right == MonomialSum::of(expected[i].second));
        }
    }
}

TEST_CASE("level_approx honours the interval budget") {
    GdIfs f = build_gdifs(cantor_params());
    CHECK_THROWS_AS(level_approx(f, 0, 25, Budget{1000}), DepthTooLarge);
    CHECK_THROWS_AS(gap_lengths_truncated(f, 0, 25, Budget{1000}), DepthTooLarge);
}

TEST_CASE("level_approx level one of the two-vertex instance") {
    GdIfs f = build_gdifs(two_vertex_params(Monomial::one(), mono("11")));
    IntervalSet set = level_approx(f, 0, 1);
    REQUIRE(set.size() == 2);
    CHECK(set.intervals[0].left.is_zero());
    CHECK(set.intervals[0].right == ms("25/4"));
    CHECK(set.intervals[1].left == ms("29/4"));
    CHECK(set.intervals[1].right == ms("25/2"));

    IntervalSet hull_only = level_approx(f, 0, 0);
    REQUIRE(hull_only.size() == 1);
    CHECK(hull_only.intervals[0].right == ms("25/2"));
}

TEST_CASE("levels nest and endpoints stay pinned") {
    for (const char* name : {"cantor.json", "example47.json", "fig2.json"}) {
        CAPTURE(name);
        GdIfs f = build_fixture(name);
        NumericOptions opts;
        for (VertexId u = 0; u < f.graph.vertex_count(); ++u) {
            IntervalSet prev = level_approx(f, u, 0);
            MonomialSum total_prev = f.lengths[size_t(u)];
            for (int m = 1; m <= 5; ++m) {
                IntervalSet cur = level_approx(f, u, m);
                // pinned extremes
                CHECK(cur.intervals.front().left == f.hull(u).left);
                CHECK(cur.intervals.back().right == f.hull(u).right);
                // nesting: each interval fits inside one of the previous level
                for (const auto& iv : cur.intervals) {
                    bool inside = false;
                    for (const auto& big : prev.intervals)
                        if (interval_inside(iv, big, opts)) {
                            inside = true;
                            break;
                        }
                    CHECK(inside);
                }
                // total length non-increasing
                MonomialSum total;
                for (const auto& iv : cur.intervals) total += iv.width();
                CHECK(certified_sign(total_prev - total, opts) != Sign::negative);
                total_prev = total;
                prev = std::move(cur);
            }
        }
    }
}

TEST_CASE("truncated gap catalog of the middle-thirds system") {
    GdIfs f = build_gdifs(cantor_params());
    GapCatalog catalog = gap_lengths_truncated(f, 0, 2);
    auto lengths = catalog.sorted_lengths();
    std::vector<Monomial> expected = {mono("1/27"), mono("1/27"), mono("1/27"), mono("1/27"),
                                      mono("1/9"),  mono("1/9"),  mono("1/3")};
    std::sort(expected.begin(), expected.end());
    CHECK(lengths == expected);
    auto distinct = catalog.distinct_values();
    CHECK(distinct.size() == 3);
}

TEST_CASE("truncated gap catalog of the two-vertex instance at depth one") {
    GdIfs f = build_gdifs(two_vertex_params(Monomial::one(), mono("11")));
    GapCatalog catalog = gap_lengths_truncated(f, 0, 1);
    auto lengths = catalog.sorted_lengths();
    std::vector<Monomial> expected = {Monomial::one(), mono("1/2"), mono("11/3")};
    std::sort(expected.begin(), expected.end());
    CHECK(lengths == expected);
}

TEST_CASE("vertices without positive gaps contribute nothing") {
    // vertex 2 has a single zero gap; its hull is still positive because it
    // draws mass from vertex 1
    ParamPoint p;
    p.graph = Digraph::make(2, {{0, 0}, {0, 1}, {1, 0}, {1, 0}});
    p.ratios = {{SignedMonomial::positive(mono("1/4")), SignedMonomial::positive(mono("1/4"))},
                {SignedMonomial::positive(mono("1/3")), SignedMonomial::positive(mono("1/3"))}};
    p.gaps = {{mono("1/4")}, {std::nullopt}};
    p.base_points = {MonomialSum::zero(), MonomialSum::zero()};
    GdIfs f = build_gdifs(p);
    SeparationReport rep = verify_separation(f);
    CHECK(rep.status == SeparationStatus::COSC_only);
    CHECK(rep.positive_lengths[1].empty());

    GapCatalog catalog = gap_lengths_truncated(f, 0, 3);
    for (const auto& e : catalog.entries) {
        if (e.depth <= 0) continue;
        CHECK(terminal_vertex(f.graph, e.path) == 0);  // only vertex 1 carries gaps
    }
}

TEST_CASE("geometric gaps of the middle-thirds system at level two") {
    GdIfs f = build_gdifs(cantor_params());
    GapCatalog catalog = gaps_bruteforce(f, 0, 2);
    REQUIRE(catalog.entries.size() == 3);
    std::map<std::string, std::pair<std::string, std::string>> got;
    for (const auto& e : catalog.entries)
        got[e.length.to_string()] =
            std::make_pair(e.gap_left->to_string(), e.gap_right->to_string());
    CHECK(got.count("3^-1"));
    CHECK(got["3^-1"] == std::make_pair(std::string("1/3"), std::string("2/3")));
    // two gaps of length 1/9 at (1/9,2/9) and (7/9,8/9): the map keeps one
    int ninth_count = 0;
    for (const auto& e : catalog.entries)
        if (e.length == mono("1/9")) ++ninth_count;
    CHECK(ninth_count == 2);

    CHECK(gaps_bruteforce(f, 0, 0).entries.empty());
}

TEST_CASE("oracle equivalence: geometry reproduces the truncated catalog") {
    for (const char* name : {"cantor.json", "example47.json", "fig2.json", "example43.json"}) {
        CAPTURE(name);
        GdIfs f = build_fixture(name);
        for (VertexId u = 0; u < f.graph.vertex_count(); ++u) {
            for (int m = 1; m <= 5; ++m) {
                auto geometric = gaps_bruteforce(f, u, m).sorted_lengths();
                auto truncated = gap_lengths_truncated(f, u, m - 1).sorted_lengths();
                CHECK(geometric == truncated);
            }
        }
    }
}

TEST_CASE("catalog provenance re-evaluates exactly") {
    GdIfs f = build_fixture("example47.json");
    SeparationReport rep = verify_separation(f);
    GapCatalog catalog = gap_lengths_truncated(f, 0, 4);
    for (const auto& e : catalog.entries) {
        REQUIRE(e.depth >= 0);
        VertexId v = e.path.empty() ? 0 : terminal_vertex(f.graph, e.path);
        REQUIRE(e.gap_index >= 0);
        const Monomial lambda = *rep.basic_gaps[size_t(v)][size_t(e.gap_index)].length_monomial;
        CHECK(lambda.times(path_ratio_magnitude(f, e.path)) == e.length);
        CHECK(int(e.path.length()) == e.depth);
    }
}

TEST_CASE("cylinder images of distinct non-prefix paths are disjoint under CSSC") {
    GdIfs f = build_fixture("fig2.json");
    NumericOptions opts;
    for (VertexId u = 0; u < f.graph.vertex_count(); ++u) {
        auto paths = paths_from(f.graph, u, 4);
        for (size_t i = 0; i < paths.size(); ++i)
            for (size_t j = 0; j < paths.size(); ++j) {
                if (i == j) continue;
                const auto& p1 = paths[i].edges;
                const auto& p2 = paths[j].edges;
                // skip prefix pairs in either direction
                if (p1.size() <= p2.size() && std::equal(p1.begin(), p1.end(), p2.begin()))
                    continue;
                if (p2.size() <= p1.size() && std::equal(p2.begin(), p2.end(), p1.begin()))
                    continue;
                ExactInterval a =
                    map_interval(compose_path(f, paths[i]), f.hull(terminal_vertex(f.graph, paths[i])));
                ExactInterval b =
                    map_interval(compose_path(f, paths[j]), f.hull(terminal_vertex(f.graph, paths[j])));
                bool disjoint = certified_sign(b.left - a.right, opts) == Sign::positive ||
                                certified_sign(a.left - b.right, opts) == Sign::positive;
                CHECK(disjoint);
            }
    }
}

TEST_CASE("hausdorff distance on interval unions") {
    auto unit = IntervalSet{{{MonomialSum::zero(), ms("1")}}};
    auto cantor1 = IntervalSet{{{MonomialSum::zero(), ms("1/3")}, {ms("2/3"), ms("1")}}};
    auto far = IntervalSet{{{ms("2"), ms("3")}}};

    Interval zero = hausdorff_distance(unit, unit, 128);
    CHECK(zero.is_point());
    CHECK(zero.mid_d() == doctest::Approx(0.0));

    // 1/6 is not dyadic, so the enclosure is one ulp wide around it
    Interval sixth = hausdorff_distance(unit, cantor1, 128);
    CHECK(sixth.mid_rational() - rq("1/6") < rq("1/1000000000"));
    CHECK(rq("1/6") - sixth.mid_rational() < rq("1/1000000000"));
    CHECK(sixth.radius_upper() < rq("1/1000000000"));

    Interval two = hausdorff_distance(unit, far, 128);
    CHECK(two.is_point());
    CHECK(two.mid_rational() == Rational(2));

    CHECK_THROWS_AS(hausdorff_distance(unit, IntervalSet{}, 128), EmptyInput);

    // non-rational endpoints go through midpoint evaluation plus widening
    Monomial lam = Monomial::generator(abstract_gen("lam", "1.0"));
    IntervalSet sym{{{MonomialSum::zero(), MonomialSum::of(lam)}}};
    Interval close = hausdorff_distance(sym, sym, 128);
    CHECK(close.lo_d() == doctest::Approx(0.0));
    CHECK(close.hi_d() < 1e-30);
}

TEST_CASE("geometric ratio detection on the middle-thirds catalog") {
    GdIfs f = build_gdifs(cantor_params());
    GapCatalog catalog = gap_lengths_truncated(f, 0, 5);
    auto ratios = detect_geometric_ratios(catalog, mono("1/9"), 3);
    CHECK(std::find(ratios.begin(), ratios.end(), mono("1/3")) != ratios.end());
    CHECK_THROWS_AS(detect_geometric_ratios(catalog, mono("1/2"), 3), ThetaAbsent);
}

TEST_CASE("geometric ratio detection on the two-vertex catalog") {
    GdIfs f = build_gdifs(two_vertex_params(Monomial::one(), mono("11")));
    GapCatalog catalog = gap_lengths_truncated(f, 0, 8);

    auto for_loop_gap = detect_geometric_ratios(catalog, mono("11/3"), 3);
    CHECK(std::find(for_loop_gap.begin(), for_loop_gap.end(), mono("1/7")) !=
          for_loop_gap.end());

    auto for_unit_gap = detect_geometric_ratios(catalog, Monomial::one(), 3);
    CHECK(std::find(for_unit_gap.begin(), for_unit_gap.end(), mono("1/2")) !=
          for_unit_gap.end());
    // no detected ratio for the vertex-1 gap may lie in the cone of the loop
    // at vertex 2
    for (const auto& r : for_unit_gap)
        CHECK_FALSE(membership(r, {mono("1/7")}, Cone::QplusStar).member);
}
