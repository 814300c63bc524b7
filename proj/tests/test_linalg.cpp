#include "doctest.h"
#include "support.hpp"
#include "tropweier/errors.hpp"
#include "tropweier/linalg.hpp"

using tw::CurrentVector;
using tw::LaplacianSystem;
using tw::Rational;
using tw::frac;

TEST_CASE("zero current gives zero potentials") {
    auto theta = theta_graph();
    LaplacianSystem sys(theta, 0);
    auto x = sys.solve_grounded(CurrentVector{});
    for (const auto& v : x) CHECK(v == 0);
}

TEST_CASE("one resistor obeys the obvious drop") {
    auto path = path_graph();
    LaplacianSystem sys(path, path.vertex_index("v"));
    CurrentVector b;
    b.entries[path.vertex_index("u")] = 1;
    b.entries[path.vertex_index("v")] = -1;
    auto x = sys.solve_grounded(b);
    CHECK(x[path.vertex_index("u")] == Rational(1));
    CHECK(x[path.vertex_index("v")] == Rational(0));
}

TEST_CASE("three parallel unit resistors combine to 1/3") {
    auto theta = theta_graph();
    int u = theta.vertex_index("u"), v = theta.vertex_index("v");
    LaplacianSystem sys(theta, v);
    CurrentVector b;
    b.entries[u] = 1;
    b.entries[v] = -1;
    CHECK(sys.solve_grounded(b)[u] == frac(1, 3));
    CHECK(sys.vertex_resistance(u, v) == frac(1, 3));
}

TEST_CASE("unbalanced current is rejected") {
    auto path = path_graph();
    LaplacianSystem sys(path, 0);
    CurrentVector b;
    b.entries[0] = 1;
    CHECK_THROWS_AS(sys.solve_grounded(b), tw::CurrentNotConserved);
}

TEST_CASE("self resistance vanishes; antipodal circle vertices give L/4") {
    for (Rational len : {Rational(1), Rational(4), frac(7, 3)}) {
        auto two_arc = tw::MetricGraph::validate_model(
            {"p", "q"}, {{"top", "p", "q", len / 2}, {"bot", "p", "q", len / 2}});
        LaplacianSystem sys(two_arc, 0);
        CHECK(sys.vertex_resistance(0, 0) == 0);
        CHECK(sys.vertex_resistance(0, 1) == len / 4);
    }
}

TEST_CASE("series-parallel oracle on a two-loop ladder") {
    // u --a(2)-- v with parallel b(2); then v --c(1)-- w with parallel d(3).
    auto g = tw::MetricGraph::validate_model({"u", "v", "w"}, {{"a", "u", "v", Rational(2)},
                                                              {"b", "u", "v", Rational(2)},
                                                              {"c", "v", "w", Rational(1)},
                                                              {"d", "v", "w", Rational(3)}});
    LaplacianSystem sys(g, 0);
    // 2 || 2 = 1, then series with (1 || 3) = 3/4 gives 7/4 from u to w.
    CHECK(sys.vertex_resistance(g.vertex_index("u"), g.vertex_index("w")) == frac(7, 4));
}

TEST_CASE("exact residual and resistance symmetry on random graphs") {
    tw::SplitMix64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        auto g = random_graph(rng, 7, 6, 20);
        int n = g.vertex_count();
        int ground = static_cast<int>(rng.below(n));
        LaplacianSystem sys(g, ground);
        CurrentVector b;
        int src = static_cast<int>(rng.below(n));
        if (src != ground) {
            b.entries[src] += 3;
            b.entries[ground] -= 3;
        }
        auto x = sys.solve_grounded(b);
        // Residual check against a freshly assembled Laplacian.
        for (int v = 0; v < n; ++v) {
            Rational lhs = 0;
            for (auto [e, end] : g.incident(v)) {
                const auto& edge = g.edge(e);
                if (edge.u == edge.v) continue;
                int w = end == 0 ? edge.v : edge.u;
                lhs += (x[v] - x[w]) / edge.length;
            }
            Rational rhs = 0;
            if (auto it = b.entries.find(v); it != b.entries.end()) rhs = it->second;
            CHECK(lhs == rhs);
        }
        // Symmetry and triangle inequality.
        int a = static_cast<int>(rng.below(n));
        int c = static_cast<int>(rng.below(n));
        int d = static_cast<int>(rng.below(n));
        CHECK(sys.vertex_resistance(a, c) == sys.vertex_resistance(c, a));
        CHECK(sys.vertex_resistance(a, d) <=
              sys.vertex_resistance(a, c) + sys.vertex_resistance(c, d));
    }
}

TEST_CASE("resistance is invariant under subdivision") {
    tw::SplitMix64 rng(47);
    for (int trial = 0; trial < 8; ++trial) {
        auto g = random_graph(rng, 6, 5, 10);
        int n = g.vertex_count();
        int a = static_cast<int>(rng.below(n));
        int b = static_cast<int>(rng.below(n));
        LaplacianSystem sys(g, 0);
        Rational before = sys.vertex_resistance(a, b);
        std::vector<tw::PointOnGraph> cuts;
        for (int i = 0; i < 4; ++i) cuts.push_back(random_point(rng, g));
        tw::RefinementMap ref(g, cuts);
        LaplacianSystem fine_sys(ref.refined(), 0);
        // Base vertices keep their indices in the refined model.
        CHECK(fine_sys.vertex_resistance(a, b) == before);
    }
}

TEST_CASE("removing edges: loops keep zero rest-resistance, bridges disconnect") {
    auto bell = dumbbell_graph();
    CHECK(tw::resistance_without_edge(bell, bell.edge_index("left")) == Rational(0));
    CHECK_FALSE(tw::resistance_without_edge(bell, bell.edge_index("mid")).has_value());
    auto theta = theta_graph();
    // removing edge a leaves b parallel to c: 1/2
    CHECK(tw::resistance_without_edge(theta, theta.edge_index("a")) == frac(1, 2));
}
