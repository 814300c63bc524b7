#include "tropweier/electrical.hpp"

#include "tropweier/errors.hpp"
#include "tropweier/linalg.hpp"

namespace tropweier {

VoltageFunction voltage_function(const MetricGraph& g, const PointOnGraph& source,
                                 const PointOnGraph& sink) {
    if (source == sink) {
        return VoltageFunction{PLFunction(g), source, sink};
    }
    RefinementMap ref(g, {source, sink});
    const MetricGraph& fine = ref.refined();
    PointOnGraph y = ref.to_refined(source);
    PointOnGraph z = ref.to_refined(sink);
    LaplacianSystem sys(fine, z.vertex_index());
    CurrentVector b;
    b.entries[y.vertex_index()] = 1;
    b.entries[z.vertex_index()] = -1;
    auto potentials = sys.solve_grounded(b);
    PLFunction j = PLFunction::from_refined_vertex_values(ref, potentials);
    return VoltageFunction{std::move(j), source, sink};
}

Rational resistance(const MetricGraph& g, const PointOnGraph& x, const PointOnGraph& y) {
    if (x == y) return 0;
    return voltage_function(g, x, y).function.evaluate(x);
}

Rational MeasureTable::total_mass() const {
    Rational total = 0;
    for (const auto& row : rows) total += row.mass;
    return total;
}

MeasureTable canonical_measure(const MetricGraph& g) {
    MeasureTable table;
    table.rows.reserve(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        auto rest = resistance_without_edge(g, e);
        Rational density = 0;
        if (rest.has_value()) {
            density = Rational(1) / (edge.length + *rest);
        }
        table.rows.push_back(MeasureTable::Row{e, density, density * edge.length});
    }
    return table;
}

Rational second_difference_oracle(const MetricGraph& g, const Segment& seg,
                                  const PointOnGraph& y0, int mesh) {
    if (mesh < 2) throw Error("mesh must be at least 2");
    const Rational len = seg.length();
    if (len <= 0) throw Error("empty segment");
    Rational h = len / mesh;
    std::vector<Rational> values;
    values.reserve(mesh + 1);
    for (int k = 0; k <= mesh; ++k) {
        Rational off = seg.lo + h * k;
        PointOnGraph x = PointOnGraph::interior(g, seg.edge, off);
        values.push_back(resistance(g, x, y0));
    }
    // Exact quadratic iff all third differences vanish.
    std::vector<Rational> second;
    for (int k = 0; k + 2 <= mesh; ++k) {
        second.push_back(values[k + 2] - 2 * values[k + 1] + values[k]);
    }
    for (size_t k = 1; k < second.size(); ++k) {
        if (second[k] != second[0]) {
            throw NotQuadratic("resistance restricted to segment is not a single quadratic");
        }
    }
    return -second[0] / (2 * h * h);
}

}  // namespace tropweier
