#include "tropweier/linalg.hpp"

#include <algorithm>

#include "tropweier/errors.hpp"

namespace tropweier {

Rational CurrentVector::total() const {
    Rational t = 0;
    for (const auto& [v, c] : entries) t += c;
    return t;
}

LaplacianSystem::LaplacianSystem(const MetricGraph& g, int ground_vertex)
    : graph_(&g), ground_(ground_vertex) {
    int n = g.vertex_count();
    laplacian_.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        if (edge.u == edge.v) continue;  // loops carry no net current
        Rational c = Rational(1) / edge.length;
        laplacian_[edge.u][edge.u] += c;
        laplacian_[edge.v][edge.v] += c;
        laplacian_[edge.u][edge.v] -= c;
        laplacian_[edge.v][edge.u] -= c;
    }
}

std::vector<Rational> solve_linear_system(std::vector<std::vector<Rational>> a,
                                          std::vector<Rational> b) {
    const size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        Rational best = rational_abs(a[col][col]);
        for (size_t row = col + 1; row < n; ++row) {
            Rational mag = rational_abs(a[row][col]);
            if (mag > best) {
                best = mag;
                pivot = row;
            }
        }
        if (best == 0) throw Error("singular linear system");
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(b[pivot], b[col]);
        }
        for (size_t row = col + 1; row < n; ++row) {
            if (a[row][col] == 0) continue;
            Rational factor = a[row][col] / a[col][col];
            a[row][col] = 0;
            for (size_t k = col + 1; k < n; ++k) a[row][k] -= factor * a[col][k];
            b[row] -= factor * b[col];
        }
    }
    std::vector<Rational> x(n, Rational(0));
    for (size_t row = n; row-- > 0;) {
        Rational acc = b[row];
        for (size_t k = row + 1; k < n; ++k) acc -= a[row][k] * x[k];
        x[row] = acc / a[row][row];
    }
    return x;
}

std::vector<Rational> LaplacianSystem::solve_grounded(const CurrentVector& b) const {
    if (b.total() != 0) {
        throw CurrentNotConserved("external currents sum to " + rational_to_string(b.total()));
    }
    int n = graph_->vertex_count();
    // Delete the ground row and column; the reduced matrix is positive
    // definite for a connected graph.
    std::vector<int> keep;
    keep.reserve(n - 1);
    for (int v = 0; v < n; ++v) {
        if (v != ground_) keep.push_back(v);
    }
    std::vector<std::vector<Rational>> a(keep.size(), std::vector<Rational>(keep.size()));
    std::vector<Rational> rhs(keep.size(), Rational(0));
    for (size_t i = 0; i < keep.size(); ++i) {
        for (size_t j = 0; j < keep.size(); ++j) a[i][j] = laplacian_[keep[i]][keep[j]];
        if (auto it = b.entries.find(keep[i]); it != b.entries.end()) rhs[i] = it->second;
    }
    auto reduced = keep.empty() ? std::vector<Rational>{} : solve_linear_system(std::move(a), std::move(rhs));
    std::vector<Rational> x(n, Rational(0));
    for (size_t i = 0; i < keep.size(); ++i) x[keep[i]] = reduced[i];
    return x;
}

Rational LaplacianSystem::vertex_resistance(int u, int v) const {
    if (u == v) return 0;
    CurrentVector b;
    b.entries[u] = 1;
    b.entries[v] = -1;
    if (ground_ != v) {
        LaplacianSystem grounded_at_v(*graph_, v);
        return grounded_at_v.solve_grounded(b)[u];
    }
    return solve_grounded(b)[u];
}

std::optional<Rational> resistance_without_edge(const MetricGraph& g, int e) {
    const auto& edge = g.edge(e);
    if (edge.u == edge.v) return Rational(0);
    if (!g.connected_without_edge(e)) return std::nullopt;

    // Rebuild the connected component of the endpoints without edge e.
    // Removing e can strand other vertices (a leaf hanging off nothing is
    // impossible, but parallel structures can split), so restrict to the
    // component of edge.u.
    std::vector<char> in_component(g.vertex_count(), 0);
    {
        std::vector<int> stack{edge.u};
        in_component[edge.u] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [f, end] : g.incident(v)) {
                if (f == e) continue;
                int w = end == 0 ? g.edge(f).v : g.edge(f).u;
                if (!in_component[w]) {
                    in_component[w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    std::vector<std::string> names;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (in_component[v]) names.push_back(g.vertex_name(v));
    }
    std::vector<RawEdge> rest;
    for (int f = 0; f < g.edge_count(); ++f) {
        if (f == e) continue;
        const auto& fe = g.edge(f);
        if (!in_component[fe.u]) continue;
        rest.push_back(RawEdge{fe.id, g.vertex_name(fe.u), g.vertex_name(fe.v), fe.length});
    }
    MetricGraph sub = MetricGraph::validate_model(std::move(names), std::move(rest));
    int u = sub.vertex_index(g.vertex_name(edge.u));
    int v = sub.vertex_index(g.vertex_name(edge.v));
    LaplacianSystem sys(sub, v);
    return sys.vertex_resistance(u, v);
}

}  // namespace tropweier
