#pragma once

#include <vector>

#include "tropweier/divisor.hpp"
#include "tropweier/graph.hpp"

namespace tropweier {

struct SweepOptions {
    int max_refine = 24;  // bisection depth cap per window
};

// Exact sweep result for one model edge. Interior points are offsets with
// reduce-certified membership; intervals are certified sub-segments of the
// locus (non-generic inputs); undecided windows hit the refinement cap
// without a verdict.
struct SegmentSweep {
    int edge = -1;
    std::vector<Rational> interior_points;
    std::vector<Segment> intervals;
    std::vector<Segment> undecided;
    bool start_vertex_weierstrass = false;
    bool end_vertex_weierstrass = false;

    // Points on the closed segment, counting each endpoint hit once.
    long closed_count() const {
        return static_cast<long>(interior_points.size()) + (start_vertex_weierstrass ? 1 : 0) +
               (end_vertex_weierstrass ? 1 : 0);
    }
};

struct WeierstrassLocus {
    long degree = 0;
    int rank = -1;
    std::vector<PointOnGraph> points;  // isolated points, ascending, deduplicated
    std::vector<Segment> intervals;    // maximal certified interval components per edge
    std::vector<Segment> undecided;    // windows the sweep could not settle
    bool generic = true;               // no interval components and nothing undecided
};

// x is a Weierstrass point of D iff the class of D - (rank+1) x is effective,
// equivalently iff the x-reduced representative piles rank+1 chips on x.
bool is_weierstrass(const MetricGraph& g, const Divisor& d, const PointOnGraph& x);

// Sweep of one model edge under the generic-rank contract (rank == deg - g);
// throws NonGenericRank otherwise.
SegmentSweep weierstrass_on_segment(const MetricGraph& g, const Divisor& d, int edge,
                                    const SweepOptions& opts = {});

// Full locus: vertices tested directly, every edge swept, results merged.
// Never throws on non-generic input; interval components and undecided
// windows are reported and clear the generic flag.
WeierstrassLocus weierstrass_locus(const MetricGraph& g, const Divisor& d,
                                   const SweepOptions& opts = {});

// Test-support oracle: evaluates membership on every edge at offsets
// (k/resolution) * length and returns the hits.
std::vector<PointOnGraph> mesh_oracle(const MetricGraph& g, const Divisor& d, int resolution);

// Number of isolated locus points on the closed edge (endpoints included).
long count_on_closed_edge(const WeierstrassLocus& locus, const MetricGraph& g, int edge);

}  // namespace tropweier
