#include <set>

#include "doctest.h"
#include "support.hpp"
#include "tropweier/electrical.hpp"
#include "tropweier/errors.hpp"
#include "tropweier/weierstrass.hpp"

using tw::Divisor;
using tw::PointOnGraph;
using tw::Rational;
using tw::frac;

namespace {

// The paper-facing graph for non-generic detection: three unit loops chained
// by two unit bridges (genus 3).
tw::MetricGraph three_loop_chain() {
    return tw::MetricGraph::validate_model(
        {"v1", "v2", "v3"},
        {{"l1", "v1", "v1", 1}, {"b1", "v1", "v2", 1}, {"l2", "v2", "v2", 1},
         {"b2", "v2", "v3", 1}, {"l3", "v3", "v3", 1}});
}

// Two unit loops joined by a unit bridge (genus 2).
tw::MetricGraph bridged_wedge() {
    return tw::MetricGraph::validate_model(
        {"y1", "y2"}, {{"c1", "y1", "y1", 1}, {"br", "y1", "y2", 1}, {"c2", "y2", "y2", 1}});
}

std::set<Rational> offsets_of(const tw::WeierstrassLocus& locus, int edge) {
    std::set<Rational> out;
    for (const auto& p : locus.points) {
        if (!p.is_vertex() && p.edge_index() == edge) out.insert(p.offset());
    }
    return out;
}

}  // namespace

TEST_CASE("membership on the circle: torsion points of N * origin") {
    auto circle = circle_graph();
    Divisor d = Divisor::single(vx(circle, "o"), 3);
    CHECK(tw::is_weierstrass(circle, d, pt(circle, "loop", frac(1, 3))));
    CHECK(tw::is_weierstrass(circle, d, pt(circle, "loop", frac(2, 3))));
    CHECK(tw::is_weierstrass(circle, d, vx(circle, "o")));
    CHECK_FALSE(tw::is_weierstrass(circle, d, pt(circle, "loop", frac(1, 4))));
    CHECK_FALSE(tw::is_weierstrass(circle, d, pt(circle, "loop", frac(1, 2))));
}

TEST_CASE("rank minus one classes have empty locus") {
    auto circle = circle_graph();
    Divisor d = Divisor::single(pt(circle, "loop", frac(1, 3))) -
                Divisor::single(pt(circle, "loop", frac(2, 3)), 2);
    CHECK_FALSE(tw::is_weierstrass(circle, d, vx(circle, "o")));
    auto locus = tw::weierstrass_locus(circle, d);
    CHECK(locus.rank == -1);
    CHECK(locus.points.empty());
    CHECK(locus.intervals.empty());
    CHECK(locus.generic);
}

TEST_CASE("circle locus is exactly the N evenly spaced points") {
    auto circle = circle_graph();
    for (long n : {2L, 3L, 5L, 12L}) {
        Divisor d = Divisor::single(vx(circle, "o"), n);
        auto locus = tw::weierstrass_locus(circle, d);
        REQUIRE(locus.generic);
        CHECK(locus.rank == n - 1);
        std::set<PointOnGraph> expected;
        expected.insert(vx(circle, "o"));
        for (long k = 1; k < n; ++k) {
            expected.insert(pt(circle, "loop", frac(k, n)));
        }
        CHECK(std::set<PointOnGraph>(locus.points.begin(), locus.points.end()) == expected);
    }
}

TEST_CASE("single chip on the circle is its own locus") {
    auto circle = circle_graph();
    auto p = pt(circle, "loop", frac(2, 7));
    auto locus = tw::weierstrass_locus(circle, Divisor::single(p));
    REQUIRE(locus.generic);
    CHECK(locus.rank == 0);
    REQUIRE(locus.points.size() == 1);
    CHECK(locus.points[0] == p);
}

TEST_CASE("wedge of two circles: torsion points per loop") {
    auto wedge = wedge_of_circles(2);
    // degree 4, chips at generic rational positions; rank = N - g = 2
    Divisor d;
    d.add(pt(wedge, "c0", frac(3, 7)), 1);
    d.add(pt(wedge, "c0", frac(2, 5)), 1);
    d.add(pt(wedge, "c1", frac(1, 3)), 1);
    d.add(pt(wedge, "c1", frac(4, 9)), 1);
    auto locus = tw::weierstrass_locus(wedge, d);
    REQUIRE(locus.generic);
    CHECK(locus.rank == 2);
    // On each loop the locus solves 3x == (sum of that loop's chips) mod 1.
    std::set<Rational> expected_c0 = {frac(29, 105), frac(64, 105), frac(99, 105)};
    std::set<Rational> expected_c1 = {frac(7, 27), frac(16, 27), frac(25, 27)};
    CHECK(offsets_of(locus, wedge.edge_index("c0")) == expected_c0);
    CHECK(offsets_of(locus, wedge.edge_index("c1")) == expected_c1);
    CHECK(locus.points.size() == 6);  // g (N - g + 1) with the wedge point excluded
}

TEST_CASE("mesh oracle hits exactly the appropriate torsion points") {
    auto circle = circle_graph();
    Divisor d = Divisor::single(vx(circle, "o"), 3);
    auto hits = tw::mesh_oracle(circle, d, 12);
    std::vector<PointOnGraph> expected = {vx(circle, "o"), pt(circle, "loop", frac(1, 3)),
                                          pt(circle, "loop", frac(2, 3))};
    CHECK(hits == expected);
    CHECK(tw::mesh_oracle(circle, Divisor::single(pt(circle, "loop", frac(1, 3))) -
                                      Divisor::single(pt(circle, "loop", frac(2, 3)), 2),
                          10)
              .empty());
}

TEST_CASE("sweep and mesh oracle agree on a sampled theta-graph divisor") {
    auto theta = theta_graph(1, 2, frac(3, 2));
    Divisor d;
    d.add(pt(theta, "a", frac(2, 7)), 1);
    d.add(pt(theta, "b", frac(5, 11)), 1);
    d.add(pt(theta, "b", frac(13, 9)), 1);
    d.add(pt(theta, "c", frac(7, 13)), 1);
    d.add(vx(theta, "u"), 1);
    REQUIRE(d.degree() == 5);
    auto locus = tw::weierstrass_locus(theta, d);
    REQUIRE(locus.generic);
    CHECK(locus.rank == 3);
    // soundness: every reported point passes the public membership test
    for (const auto& p : locus.points) {
        CHECK(tw::is_weierstrass(theta, d, p));
    }
    // completeness against the independent mesh: a mesh hit is an exact
    // locus point, so it must be reported; a reported point on the mesh must
    // be a hit
    const int resolution = 60;
    auto hits = tw::mesh_oracle(theta, d, resolution);
    std::set<PointOnGraph> point_set(locus.points.begin(), locus.points.end());
    for (const auto& h : hits) {
        CHECK(point_set.count(h) == 1);
    }
    std::set<PointOnGraph> hit_set(hits.begin(), hits.end());
    for (const auto& p : locus.points) {
        if (!p.is_vertex() && tw::is_integer(p.offset() * resolution / theta.edge(p.edge_index()).length)) {
            CHECK(hit_set.count(p) == 1);
        }
    }
    // quantitative sandwich per edge
    auto mu = tw::canonical_measure(theta);
    long n = d.degree();
    long genus = theta.genus();
    for (int e = 0; e < theta.edge_count(); ++e) {
        Rational count(tw::count_on_closed_edge(locus, theta, e));
        CHECK(count >= Rational(n) * mu.mass(e) - 3 * genus - 1);
        CHECK(count <= Rational(n) * mu.mass(e) + genus + 2);
    }
}

TEST_CASE("four chips on a bridge of the three-loop chain: whole-graph locus") {
    auto g = three_loop_chain();
    Divisor d = Divisor::single(pt(g, "b1", frac(1, 2)), 4);
    auto locus = tw::weierstrass_locus(g, d);
    CHECK_FALSE(locus.generic);
    CHECK(locus.rank == 2);
    CHECK(!locus.intervals.empty());
    // the locus is all of the graph: every edge is covered by one interval
    std::set<int> covered;
    for (const auto& s : locus.intervals) {
        if (s.lo == 0 && s.hi == g.edge(s.edge).length) covered.insert(s.edge);
    }
    CHECK(covered.size() == static_cast<size_t>(g.edge_count()));
    CHECK(locus.undecided.empty());
}

TEST_CASE("canonical divisor of the bridged wedge: bridge interval plus antipodes") {
    auto g = bridged_wedge();
    Divisor k = tw::canonical_divisor(g);
    REQUIRE(k.degree() == 2);
    auto locus = tw::weierstrass_locus(g, k);
    CHECK_FALSE(locus.generic);
    CHECK(locus.rank == 1);
    REQUIRE(locus.intervals.size() == 1);
    CHECK(locus.intervals[0].edge == g.edge_index("br"));
    CHECK(locus.intervals[0].lo == 0);
    CHECK(locus.intervals[0].hi == 1);
    std::set<PointOnGraph> expected_points = {pt(g, "c1", frac(1, 2)), pt(g, "c2", frac(1, 2))};
    CHECK(std::set<PointOnGraph>(locus.points.begin(), locus.points.end()) == expected_points);
}

TEST_CASE("segment sweep honors the generic-rank contract") {
    auto g = three_loop_chain();
    Divisor d = Divisor::single(pt(g, "b1", frac(1, 2)), 4);
    CHECK_THROWS_AS(tw::weierstrass_on_segment(g, d, 0), tw::NonGenericRank);

    auto circle = circle_graph();
    Divisor dc = Divisor::single(vx(circle, "o"), 5);
    auto sweep = tw::weierstrass_on_segment(circle, dc, 0);
    CHECK(sweep.interior_points.size() == 4);
    CHECK(sweep.start_vertex_weierstrass);
    CHECK(sweep.closed_count() == 5);  // one vertex, counted once on the loop
}

TEST_CASE("witness slope structure along a swept segment") {
    // Slope-count relation on a circle segment: f_N between the endpoint
    // reductions has at most three distinct slopes, adjacent differing by 1,
    // and the count of interior locus points matches N - g minus the slope
    // measured against the sweep direction.
    auto circle = tw::MetricGraph::validate_model(
        {"p", "q"}, {{"top", "p", "q", frac(1, 2)}, {"bot", "q", "p", frac(1, 2)}});
    Divisor d = Divisor::single(vx(circle, "p"), 3);
    int e = circle.edge_index("top");
    auto rp = tw::reduce(circle, vx(circle, "p"), d);
    auto rq = tw::reduce(circle, vx(circle, "q"), d);
    tw::PLFunction f = rq.witness - rp.witness;
    const auto& slopes = f.slopes(e);
    CHECK(slopes.size() <= 3);
    for (size_t i = 0; i + 1 < slopes.size(); ++i) {
        CHECK(tw::rational_abs(slopes[i] - slopes[i + 1]) == 1);
    }
    // W on (0, 1/2) open: {1/3}: m = 1; N - g - m = 1
    long n = 3, genus = 1, m = 1;
    for (const auto& s : slopes) {
        CHECK(-s >= n - genus - m - 1);
        CHECK(-s <= n - genus - m + 2);
    }
}
