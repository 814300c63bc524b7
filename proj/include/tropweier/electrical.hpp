#pragma once

#include <vector>

#include "tropweier/graph.hpp"
#include "tropweier/plfunction.hpp"
#include "tropweier/rational.hpp"

namespace tropweier {

// Electric potential when one unit of current flows from source to sink,
// grounded (value 0) at the sink. Slopes are the currents through each
// segment. Satisfies 0 <= j(x) <= j(source) everywhere.
struct VoltageFunction {
    PLFunction function;
    PointOnGraph source;
    PointOnGraph sink;
};

VoltageFunction voltage_function(const MetricGraph& g, const PointOnGraph& source,
                                 const PointOnGraph& sink);

// Exact effective resistance between two points: the value at x of the
// voltage function sending unit current x -> y.
Rational resistance(const MetricGraph& g, const PointOnGraph& x, const PointOnGraph& y);

// Edgewise-constant canonical measure: per edge, density 1 / (R_e + R_rest)
// where R_e is the edge length and R_rest the effective resistance of the
// rest of the graph between the endpoints (density 0 when removal
// disconnects them, 1/R_e for loops). Total mass equals the genus.
struct MeasureTable {
    struct Row {
        int edge;
        Rational density;  // mass per unit length
        Rational mass;     // density * length
    };
    std::vector<Row> rows;

    Rational total_mass() const;
    const Rational& density(int edge) const { return rows[edge].density; }
    const Rational& mass(int edge) const { return rows[edge].mass; }

    // Mass of a sub-interval of an edge.
    Rational mass_on(const Segment& s) const { return rows[s.edge].density * s.length(); }
};

MeasureTable canonical_measure(const MetricGraph& g);

// Independent density check: samples r(., y0) at mesh+1 equispaced points of
// the segment, verifies the restriction is an exact quadratic (vanishing
// third differences) and returns -(1/2) * (second derivative). Throws
// NotQuadratic when a breakpoint lies inside the segment.
Rational second_difference_oracle(const MetricGraph& g, const Segment& seg,
                                  const PointOnGraph& y0, int mesh);

}  // namespace tropweier
