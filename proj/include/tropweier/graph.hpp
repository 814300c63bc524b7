#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tropweier/rational.hpp"

namespace tropweier {

class MetricGraph;

// A location on a metric graph: either a vertex, or an interior point of an
// edge at a rational offset measured from the edge's first endpoint.
// Interior points with offset 0 or offset == length are canonicalized to the
// vertex form on construction, so equality and ordering are representation
// independent.
class PointOnGraph {
public:
    static PointOnGraph vertex(int v);
    // Canonicalizes endpoint offsets to vertices; throws on out-of-range.
    static PointOnGraph interior(const MetricGraph& g, int edge, Rational offset);

    bool is_vertex() const { return edge_ < 0; }
    int vertex_index() const { return vertex_; }
    int edge_index() const { return edge_; }
    const Rational& offset() const { return offset_; }

    bool operator==(const PointOnGraph& o) const;
    bool operator<(const PointOnGraph& o) const;
    bool operator!=(const PointOnGraph& o) const { return !(*this == o); }

private:
    int vertex_ = -1;
    int edge_ = -1;
    Rational offset_ = 0;
};

// A closed sub-interval [lo, hi] of one model edge.
struct Segment {
    int edge = -1;
    Rational lo = 0;
    Rational hi = 0;

    Rational length() const { return hi - lo; }
};

enum class SegmentClass { bridge, loop, ordinary };

struct RawEdge {
    std::string id;
    std::string u;
    std::string v;
    Rational length;
};

// Compact connected metric graph with exact rational edge lengths.
// Immutable after validation; loops and parallel edges are permitted.
class MetricGraph {
public:
    struct Edge {
        std::string id;
        int u;
        int v;
        Rational length;
    };

    // Validates a raw description and assigns canonical indices in input
    // order. Throws DisconnectedGraph / NonpositiveLength / DanglingEndpoint.
    static MetricGraph validate_model(std::vector<std::string> vertex_names,
                                      std::vector<RawEdge> edges);

    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::string& vertex_name(int v) const { return vertex_names_[v]; }
    int vertex_index(const std::string& name) const;
    int edge_index(const std::string& id) const;

    // (edge index, end) pairs at a vertex; a loop contributes both ends.
    const std::vector<std::pair<int, int>>& incident(int v) const { return incident_[v]; }

    int genus() const { return edge_count() - vertex_count() + 1; }
    Rational total_length() const;
    bool is_loop(int e) const { return edges_[e].u == edges_[e].v; }
    bool is_bridge(int e) const;

    // Number of connected components of a small punctured neighborhood.
    int valence(const PointOnGraph& x) const;

    SegmentClass segment_class(const Segment& s) const;

    // Exact shortest-path distance between two points.
    Rational path_distance(const PointOnGraph& x, const PointOnGraph& y) const;

    // Single-source shortest paths over the vertex set from the given
    // sources (distance 0 at each source).
    std::vector<Rational> vertex_distances(const std::vector<int>& sources) const;

    // True when endpoints u, v of edge `e` stay connected after the interior
    // of `e` is removed.
    bool connected_without_edge(int e) const;

    std::string describe_point(const PointOnGraph& x) const;

private:
    friend class RefinementMap;
    MetricGraph() = default;
    void build_index();

    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> incident_;
    std::unordered_map<std::string, int> vertex_by_name_;
    std::unordered_map<std::string, int> edge_by_id_;
};

// Result of subdividing a graph at a finite point set: the refined model and
// the bijective relabeling between points of the two models.
class RefinementMap {
public:
    RefinementMap(const MetricGraph& base, const std::vector<PointOnGraph>& points);

    const MetricGraph& base() const { return *base_; }
    const MetricGraph& refined() const { return refined_; }

    PointOnGraph to_refined(const PointOnGraph& base_point) const;
    PointOnGraph to_base(const PointOnGraph& refined_point) const;

    // Cut offsets on a base edge (ascending, strictly interior).
    const std::vector<Rational>& cuts(int base_edge) const { return cuts_[base_edge]; }
    // Refined sub-edge indices of a base edge, in order along the edge.
    const std::vector<int>& sub_edges(int base_edge) const { return sub_edges_[base_edge]; }
    int base_edge_of(int refined_edge) const { return refined_edge_base_[refined_edge]; }
    // Offset of a refined edge's start within its base edge.
    const Rational& sub_edge_start(int refined_edge) const { return refined_edge_start_[refined_edge]; }

private:
    const MetricGraph* base_;
    MetricGraph refined_;
    std::vector<std::vector<Rational>> cuts_;
    std::vector<std::vector<int>> cut_vertices_;
    std::vector<std::vector<int>> sub_edges_;
    std::vector<int> refined_edge_base_;
    std::vector<Rational> refined_edge_start_;
    // refined vertex -> base point (vertices map to vertices, cut vertices to
    // interior points of the base model)
    std::vector<PointOnGraph> refined_vertex_to_base_;
};

}  // namespace tropweier
