#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "tropweier/divisor.hpp"
#include "tropweier/electrical.hpp"
#include "tropweier/equidist.hpp"
#include "tropweier/graph.hpp"
#include "tropweier/weierstrass.hpp"

namespace tropweier {

// Graph files: {"vertices": [...], "edges": [{"ends": [u, v], "id": ...,
// "length": "p/q"}]}. Rationals are decimal-free strings; round-trips are
// bit-exact.
MetricGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const MetricGraph& g);
MetricGraph load_graph(const std::string& path);

// Divisor files: [{"at": {"vertex": id} | {"edge": id, "offset": "p/q"},
// "coeff": n}, ...]
Divisor divisor_from_json(const nlohmann::json& j, const MetricGraph& g);
nlohmann::json divisor_to_json(const Divisor& d, const MetricGraph& g);
Divisor load_divisor(const std::string& path, const MetricGraph& g);

// Command-line point syntax: "vertex:NAME" or "edge:ID@p/q".
PointOnGraph parse_point(const MetricGraph& g, std::string_view text);

nlohmann::json point_to_json(const PointOnGraph& p, const MetricGraph& g);

nlohmann::json measure_to_json(const MetricGraph& g, const MeasureTable& mu);
std::string measure_to_csv(const MetricGraph& g, const MeasureTable& mu);

nlohmann::json locus_to_json(const MetricGraph& g, const WeierstrassLocus& locus);

nlohmann::json report_to_json(const MetricGraph& g, const ExperimentResult& result);
std::string report_to_csv(const MetricGraph& g, const ExperimentResult& result);

}  // namespace tropweier
