#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tropweier/graph.hpp"
#include "tropweier/rational.hpp"

namespace tropweier {

// External current vector on the vertex set; entries must sum to zero.
struct CurrentVector {
    std::map<int, Rational> entries;  // vertex index -> current (in = positive)

    Rational total() const;
};

// Grounded weighted-Laplacian system over the vertex set of a model. Each
// edge of length L contributes conductance 1/L between its endpoints; loops
// contribute nothing. Row sums of the ungrounded Laplacian are zero.
class LaplacianSystem {
public:
    LaplacianSystem(const MetricGraph& g, int ground_vertex);

    const MetricGraph& graph() const { return *graph_; }
    int ground() const { return ground_; }

    // Unique exact potential vector with value 0 at the ground vertex that
    // satisfies the current law everywhere. Throws CurrentNotConserved when
    // the entries of b do not sum to zero.
    std::vector<Rational> solve_grounded(const CurrentVector& b) const;

    // Potential at u when one unit of current is sent from u to v, grounded
    // at v. Zero iff u == v.
    Rational vertex_resistance(int u, int v) const;

private:
    const MetricGraph* graph_;
    int ground_;
    std::vector<std::vector<Rational>> laplacian_;  // full, before grounding
};

// Exact dense Gaussian elimination over the rationals with partial pivoting
// by magnitude. Throws Error on a singular matrix.
std::vector<Rational> solve_linear_system(std::vector<std::vector<Rational>> a,
                                          std::vector<Rational> b);

// Effective resistance between the endpoints of edge `e` after removing its
// interior; std::nullopt when the removal disconnects the endpoints.
std::optional<Rational> resistance_without_edge(const MetricGraph& g, int e);

}  // namespace tropweier
