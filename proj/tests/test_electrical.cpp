#include "doctest.h"
#include "support.hpp"
#include "tropweier/electrical.hpp"
#include "tropweier/errors.hpp"

using tw::Rational;
using tw::frac;

TEST_CASE("voltage function with equal endpoints is zero") {
    auto theta = theta_graph();
    auto j = tw::voltage_function(theta, vx(theta, "u"), vx(theta, "u"));
    CHECK(j.function.max_value() == 0);
    CHECK(j.function.min_value() == 0);
}

TEST_CASE("circle voltage: source at 1/2 grounded at 0") {
    auto circle = circle_graph();
    auto y = pt(circle, "loop", frac(1, 2));
    auto z = vx(circle, "o");
    auto j = tw::voltage_function(circle, y, z);
    // j(x) = x/2 on [0, 1/2]; slope magnitude 1/2 on both arcs.
    CHECK(j.function.evaluate(pt(circle, "loop", frac(1, 4))) == frac(1, 8));
    CHECK(j.function.evaluate(y) == frac(1, 4));
    CHECK(j.function.evaluate(z) == 0);
    CHECK(j.function.slope_at(0, frac(1, 4)) == frac(1, 2));
    CHECK(j.function.slope_at(0, frac(3, 4)) == frac(-1, 2));
    // V1: 0 <= j <= j(source)
    CHECK(j.function.min_value() == 0);
    CHECK(j.function.max_value() == frac(1, 4));
}

TEST_CASE("bridge voltage attains the sharp unit slope") {
    auto path = path_graph();
    auto j = tw::voltage_function(path, vx(path, "u"), vx(path, "v"));
    CHECK(j.function.slope_at(0, frac(1, 2)) == Rational(-1));
    CHECK(j.function.evaluate(vx(path, "u")) == Rational(1));
}

TEST_CASE("circle resistance formula r(x,0) = x - x^2/L") {
    for (Rational len : {Rational(1), Rational(4), frac(7, 3)}) {
        auto circle = circle_graph(len);
        auto base = vx(circle, "o");
        for (int k = 1; k < 20; ++k) {
            Rational x = len * frac(k, 20);
            auto p = tw::PointOnGraph::interior(circle, 0, x);
            CHECK(tw::resistance(circle, p, base) == x - x * x / len);
        }
        // maximum L/4 at midpoint
        auto mid = tw::PointOnGraph::interior(circle, 0, len / 2);
        CHECK(tw::resistance(circle, mid, base) == len / 4);
        CHECK(tw::resistance(circle, base, base) == 0);
    }
}

TEST_CASE("resistance between interior points is symmetric and exact") {
    auto theta = theta_graph();
    CHECK(tw::resistance(theta, vx(theta, "u"), vx(theta, "v")) == frac(1, 3));
    tw::SplitMix64 rng(3);
    for (int trial = 0; trial < 6; ++trial) {
        auto g = random_graph(rng, 6, 5, 12);
        auto x = random_point(rng, g);
        auto y = random_point(rng, g);
        CHECK(tw::resistance(g, x, y) == tw::resistance(g, y, x));
        CHECK(tw::resistance(g, x, x) == 0);
    }
}

TEST_CASE("canonical measure of the genus-2 theta-like graph") {
    struct Case {
        Rational a, b, c;
    };
    for (auto [a, b, c] : {Case{1, 1, 1}, Case{1, 2, 3}, Case{5, 1, 1}}) {
        auto g = theta_graph(a, b, c);
        auto mu = tw::canonical_measure(g);
        Rational denom = a * b + a * c + b * c;
        CHECK(mu.density(g.edge_index("a")) == (b + c) / denom);
        CHECK(mu.density(g.edge_index("b")) == (a + c) / denom);
        CHECK(mu.density(g.edge_index("c")) == (a + b) / denom);
        CHECK(mu.total_mass() == Rational(2));
    }
    auto unit = theta_graph();
    auto mu = tw::canonical_measure(unit);
    CHECK(mu.density(0) == frac(2, 3));
    CHECK(mu.mass(0) == frac(2, 3));
}

TEST_CASE("bridges carry no mass, loops carry mass one") {
    auto bell = dumbbell_graph();
    auto mu = tw::canonical_measure(bell);
    CHECK(mu.mass(bell.edge_index("mid")) == 0);
    CHECK(mu.mass(bell.edge_index("left")) == 1);
    CHECK(mu.mass(bell.edge_index("right")) == 1);
    CHECK(mu.total_mass() == Rational(2));
    for (Rational len : {Rational(1), frac(7, 3)}) {
        auto circle = circle_graph(len);
        auto cmu = tw::canonical_measure(circle);
        CHECK(cmu.density(0) == 1 / len);
        CHECK(cmu.total_mass() == Rational(1));
    }
}

TEST_CASE("second-difference oracle matches the closed-form density") {
    auto circle = circle_graph();
    // segment inside (0, 1) avoiding the basepoint at 0
    Rational density = tw::second_difference_oracle(
        circle, {0, frac(1, 8), frac(7, 8)}, vx(circle, "o"), 4);
    CHECK(density == Rational(1));

    auto bell = dumbbell_graph();
    Rational bridge_density = tw::second_difference_oracle(
        bell, {bell.edge_index("mid"), frac(1, 4), frac(3, 4)}, vx(bell, "p"), 3);
    CHECK(bridge_density == 0);

    auto theta = theta_graph(1, 2, 3);
    auto mu = tw::canonical_measure(theta);
    int ea = theta.edge_index("a");
    Rational oracle = tw::second_difference_oracle(
        theta, {ea, frac(1, 5), frac(4, 5)}, pt(theta, "b", Rational(1)), 5);
    // basepoint at offset 1 of edge b (interior since b has length 2)
    CHECK(oracle == mu.density(ea));
}

TEST_CASE("oracle density does not depend on the basepoint") {
    auto theta = theta_graph(2, 3, 5);
    int ea = theta.edge_index("a");
    tw::Segment seg{ea, frac(1, 3), frac(5, 3)};
    auto d1 = tw::second_difference_oracle(theta, seg, pt(theta, "b", frac(1, 2)), 4);
    auto d2 = tw::second_difference_oracle(theta, seg, pt(theta, "c", frac(9, 2)), 4);
    auto d3 = tw::second_difference_oracle(theta, seg, vx(theta, "v"), 4);
    CHECK(d1 == d2);
    CHECK(d1 == d3);
    CHECK(d1 == tw::canonical_measure(theta).density(ea));
}

TEST_CASE("oracle rejects segments containing the basepoint") {
    auto circle = circle_graph();
    CHECK_THROWS_AS(tw::second_difference_oracle(circle,
                                                 {0, frac(1, 8), frac(7, 8)},
                                                 pt(circle, "loop", frac(1, 2)), 6),
                    tw::NotQuadratic);
}

TEST_CASE("Foster: random graphs have total canonical mass equal to genus") {
    tw::SplitMix64 rng(2024);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = random_graph(rng);
        auto mu = tw::canonical_measure(g);
        CHECK(mu.total_mass() == Rational(g.genus()));
        for (const auto& row : mu.rows) {
            CHECK(row.mass >= 0);
            CHECK(row.mass <= 1);
            CHECK((row.mass == 0) == g.is_bridge(row.edge));
            CHECK((row.mass == 1) == g.is_loop(row.edge));
        }
    }
}

TEST_CASE("voltage symmetry identities on random points") {
    tw::SplitMix64 rng(555);
    for (int trial = 0; trial < 5; ++trial) {
        auto g = random_graph(rng, 6, 5, 10);
        auto x = random_point(rng, g);
        auto y = random_point(rng, g);
        auto z = random_point(rng, g);
        auto w = random_point(rng, g);
        // three-term symmetry
        CHECK(tw::voltage_function(g, y, z).function.evaluate(x) ==
              tw::voltage_function(g, x, z).function.evaluate(y));
        // four-point identity
        auto jy = tw::voltage_function(g, y, z).function;
        auto jx = tw::voltage_function(g, x, w).function;
        CHECK(jy.evaluate(x) - jy.evaluate(w) == jx.evaluate(y) - jx.evaluate(z));
    }
}

TEST_CASE("slope of any voltage function is bounded by the injected degree") {
    tw::SplitMix64 rng(808);
    for (int trial = 0; trial < 5; ++trial) {
        auto g = random_graph(rng, 6, 5, 10);
        auto y = random_point(rng, g);
        auto z = random_point(rng, g);
        auto j = tw::voltage_function(g, y, z).function;
        for (int e = 0; e < g.edge_count(); ++e) {
            for (const auto& s : j.slopes(e)) {
                CHECK(tw::rational_abs(s) <= 1);
            }
        }
    }
}
