#pragma once

#include <vector>

#include "tropweier/graph.hpp"
#include "tropweier/rational.hpp"

namespace tropweier {

// Continuous piecewise linear function on a metric graph, stored per edge as
// interior breakpoints plus a slope on each sub-interval (measured in the
// u -> v direction), together with one value per vertex. The representation
// is kept canonical: adjacent sub-intervals with equal slopes are merged.
//
// Continuity invariant: for every edge, the value walked from u along the
// slope profile equals the stored value at v.
class PLFunction {
public:
    explicit PLFunction(const MetricGraph& g);  // zero function
    static PLFunction constant(const MetricGraph& g, const Rational& c);

    const MetricGraph& graph() const { return *graph_; }

    const Rational& value_at_vertex(int v) const { return vertex_values_[v]; }
    Rational evaluate(const PointOnGraph& p) const;

    const std::vector<Rational>& breakpoints(int e) const { return cuts_[e]; }
    const std::vector<Rational>& slopes(int e) const { return slopes_[e]; }

    // Slope on the sub-interval containing the open neighborhood of `offset`
    // (u -> v direction); `offset` must not be a breakpoint.
    Rational slope_at(int e, const Rational& offset) const;

    // Breakpoints of this function strictly inside (lo, hi) on edge e.
    std::vector<Rational> breakpoints_in(int e, const Rational& lo, const Rational& hi) const;

    PLFunction& operator+=(const PLFunction& o);
    PLFunction& operator-=(const PLFunction& o);
    friend PLFunction operator+(PLFunction a, const PLFunction& b) { return a += b; }
    friend PLFunction operator-(PLFunction a, const PLFunction& b) { return a -= b; }
    PLFunction operator-() const;

    PLFunction& scale(const Rational& c);
    PLFunction& add_constant(const Rational& c);

    // Pointwise max(f, c) / min(f, c).
    PLFunction clip_below(const Rational& c) const;
    PLFunction clip_above(const Rational& c) const;

    bool integer_slopes() const;
    Rational min_value() const;
    Rational max_value() const;

    // Replaces one edge profile; the caller must keep the continuity
    // invariant (checked by check_continuity, and cheap to maintain when
    // constructing from vertex data).
    void set_profile(int e, std::vector<Rational> cuts, std::vector<Rational> slopes);
    void set_vertex_value(int v, Rational value);
    void check_continuity() const;  // throws Error on violation
    void canonicalize();

    // Builds the PL interpolation of vertex potentials on a refined model,
    // expressed on the base graph: each refined edge carries the affine
    // interpolation between its endpoint potentials.
    static PLFunction from_refined_vertex_values(const RefinementMap& ref,
                                                 const std::vector<Rational>& values);

    // Re-expresses a function on the refined model as a function on the base
    // model (sub-edge profiles concatenate along each base edge).
    static PLFunction pull_back(const RefinementMap& ref, const PLFunction& fine);

    // Distance to a closed source set, as a PL function. Sources are refined
    // by `vertex_is_source`; edges flagged in `edge_in_source_set` lie
    // entirely in the set (distance 0 along them).
    static PLFunction distance_function(const MetricGraph& g,
                                        const std::vector<char>& vertex_is_source,
                                        const std::vector<char>& edge_in_source_set);

private:
    const MetricGraph* graph_;
    std::vector<Rational> vertex_values_;
    std::vector<std::vector<Rational>> cuts_;
    std::vector<std::vector<Rational>> slopes_;
};

}  // namespace tropweier
