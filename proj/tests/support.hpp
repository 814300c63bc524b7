#pragma once

// Shared fixtures for the test suites: standard small graphs and a
// deterministic random-graph generator.

#include <string>
#include <vector>

#include "tropweier/divisor.hpp"
#include "tropweier/graph.hpp"
#include "tropweier/rational.hpp"
#include "tropweier/rng.hpp"

namespace tw = tropweier;

// Circle with a single vertex and one loop edge of the given circumference.
inline tw::MetricGraph circle_graph(const tw::Rational& circumference = 1) {
    return tw::MetricGraph::validate_model(
        {"o"}, {{"loop", "o", "o", circumference}});
}

// Two vertices joined by three parallel edges (genus 2).
inline tw::MetricGraph theta_graph(const tw::Rational& a = 1, const tw::Rational& b = 1,
                                   const tw::Rational& c = 1) {
    return tw::MetricGraph::validate_model(
        {"u", "v"}, {{"a", "u", "v", a}, {"b", "u", "v", b}, {"c", "u", "v", c}});
}

// Wedge of g unit circles at a single vertex.
inline tw::MetricGraph wedge_of_circles(int g) {
    std::vector<tw::RawEdge> edges;
    for (int i = 0; i < g; ++i) {
        edges.push_back({"c" + std::to_string(i), "o", "o", tw::Rational(1)});
    }
    return tw::MetricGraph::validate_model({"o"}, std::move(edges));
}

// Two unit loops joined by a bridge of the given length.
inline tw::MetricGraph dumbbell_graph(const tw::Rational& bridge_length = 1) {
    return tw::MetricGraph::validate_model(
        {"p", "q"},
        {{"left", "p", "p", 1}, {"mid", "p", "q", bridge_length}, {"right", "q", "q", 1}});
}

// Path u - v of unit length.
inline tw::MetricGraph path_graph(const tw::Rational& length = 1) {
    return tw::MetricGraph::validate_model({"u", "v"}, {{"e", "u", "v", length}});
}

inline tw::PointOnGraph pt(const tw::MetricGraph& g, const std::string& edge_id,
                           const tw::Rational& offset) {
    return tw::PointOnGraph::interior(g, g.edge_index(edge_id), offset);
}

inline tw::PointOnGraph vx(const tw::MetricGraph& g, const std::string& name) {
    return tw::PointOnGraph::vertex(g.vertex_index(name));
}

// Connected random graph with bounded size and rational lengths whose
// denominators stay below `max_denominator`. Extra edges (possibly loops or
// parallels) are added on top of a random spanning tree.
inline tw::MetricGraph random_graph(tw::SplitMix64& rng, int max_vertices = 8, int max_extra = 7,
                                    long max_denominator = 50) {
    int n = 2 + static_cast<int>(rng.below(static_cast<unsigned long long>(max_vertices - 1)));
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<tw::RawEdge> edges;
    auto random_length = [&]() {
        long den = 1 + static_cast<long>(rng.below(max_denominator));
        long num = 1 + static_cast<long>(rng.below(4 * den));
        tw::Rational len(num, den);
        len.canonicalize();
        return len;
    };
    for (int i = 1; i < n; ++i) {
        int parent = static_cast<int>(rng.below(i));
        edges.push_back({"e" + std::to_string(edges.size()), names[parent], names[i],
                         random_length()});
    }
    int extra = static_cast<int>(rng.below(max_extra + 1));
    for (int k = 0; k < extra; ++k) {
        int a = static_cast<int>(rng.below(n));
        int b = static_cast<int>(rng.below(n));
        edges.push_back({"e" + std::to_string(edges.size()), names[a], names[b], random_length()});
    }
    return tw::MetricGraph::validate_model(std::move(names), std::move(edges));
}

// Variant with an exact number of independent cycles (genus == extra).
inline tw::MetricGraph random_graph_with_genus(tw::SplitMix64& rng, int genus,
                                               int max_vertices = 6, long max_denominator = 12) {
    int n = 2 + static_cast<int>(rng.below(static_cast<unsigned long long>(max_vertices - 1)));
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<tw::RawEdge> edges;
    auto random_length = [&]() {
        long den = 1 + static_cast<long>(rng.below(max_denominator));
        long num = 1 + static_cast<long>(rng.below(3 * den));
        tw::Rational len(num, den);
        len.canonicalize();
        return len;
    };
    for (int i = 1; i < n; ++i) {
        int parent = static_cast<int>(rng.below(i));
        edges.push_back({"e" + std::to_string(edges.size()), names[parent], names[i],
                         random_length()});
    }
    for (int k = 0; k < genus; ++k) {
        int a = static_cast<int>(rng.below(n));
        int b = static_cast<int>(rng.below(n));
        edges.push_back({"e" + std::to_string(edges.size()), names[a], names[b], random_length()});
    }
    return tw::MetricGraph::validate_model(std::move(names), std::move(edges));
}

// Random point: uniform edge choice, rational offset with small denominator.
inline tw::PointOnGraph random_point(tw::SplitMix64& rng, const tw::MetricGraph& g,
                                     long denom = 16) {
    int e = static_cast<int>(rng.below(g.edge_count()));
    long k = static_cast<long>(rng.below(denom + 1));
    tw::Rational off = g.edge(e).length * tw::frac(k, denom);
    off.canonicalize();
    return tw::PointOnGraph::interior(g, e, off);
}

inline tw::Divisor random_effective_divisor(tw::SplitMix64& rng, const tw::MetricGraph& g,
                                            int degree, long denom = 16) {
    tw::Divisor d;
    for (int i = 0; i < degree; ++i) d.add(random_point(rng, g, denom), 1);
    return d;
}
