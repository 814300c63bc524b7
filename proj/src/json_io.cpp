#include "tropweier/json_io.hpp"

#include <fstream>
#include <sstream>

#include "tropweier/errors.hpp"

namespace tropweier {

using nlohmann::json;

MetricGraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
        throw ParseError("graph file needs 'vertices' and 'edges'");
    }
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(v.get<std::string>());
    std::vector<RawEdge> edges;
    for (const auto& e : j.at("edges")) {
        RawEdge re;
        re.id = e.at("id").get<std::string>();
        const auto& ends = e.at("ends");
        if (!ends.is_array() || ends.size() != 2) {
            throw ParseError("edge '" + re.id + "' needs ends:[u,v]");
        }
        re.u = ends[0].get<std::string>();
        re.v = ends[1].get<std::string>();
        re.length = rational_from_string(e.at("length").get<std::string>());
        edges.push_back(std::move(re));
    }
    return MetricGraph::validate_model(std::move(vertices), std::move(edges));
}

json graph_to_json(const MetricGraph& g) {
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < g.vertex_count(); ++v) j["vertices"].push_back(g.vertex_name(v));
    j["edges"] = json::array();
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        j["edges"].push_back({{"id", edge.id},
                              {"ends", {g.vertex_name(edge.u), g.vertex_name(edge.v)}},
                              {"length", rational_to_string(edge.length)}});
    }
    return j;
}

MetricGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    json j;
    in >> j;
    return graph_from_json(j);
}

Divisor divisor_from_json(const json& j, const MetricGraph& g) {
    if (!j.is_array()) throw ParseError("divisor file must be a list");
    Divisor d;
    for (const auto& entry : j) {
        const auto& at = entry.at("at");
        long coeff = entry.at("coeff").get<long>();
        if (at.contains("vertex")) {
            d.add(PointOnGraph::vertex(g.vertex_index(at.at("vertex").get<std::string>())), coeff);
        } else if (at.contains("edge")) {
            int e = g.edge_index(at.at("edge").get<std::string>());
            Rational off = rational_from_string(at.at("offset").get<std::string>());
            d.add(PointOnGraph::interior(g, e, off), coeff);
        } else {
            throw ParseError("divisor entry needs at.vertex or at.edge");
        }
    }
    return d;
}

json point_to_json(const PointOnGraph& p, const MetricGraph& g) {
    if (p.is_vertex()) return json{{"vertex", g.vertex_name(p.vertex_index())}};
    return json{{"edge", g.edge(p.edge_index()).id},
                {"offset", rational_to_string(p.offset())}};
}

json divisor_to_json(const Divisor& d, const MetricGraph& g) {
    json j = json::array();
    for (const auto& [p, c] : d.coeffs()) {
        j.push_back({{"at", point_to_json(p, g)}, {"coeff", c}});
    }
    return j;
}

Divisor load_divisor(const std::string& path, const MetricGraph& g) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open divisor file '" + path + "'");
    json j;
    in >> j;
    return divisor_from_json(j, g);
}

PointOnGraph parse_point(const MetricGraph& g, std::string_view text) {
    constexpr std::string_view kVertex = "vertex:";
    constexpr std::string_view kEdge = "edge:";
    if (text.substr(0, kVertex.size()) == kVertex) {
        return PointOnGraph::vertex(g.vertex_index(std::string(text.substr(kVertex.size()))));
    }
    if (text.substr(0, kEdge.size()) == kEdge) {
        auto rest = text.substr(kEdge.size());
        auto at = rest.find('@');
        if (at == std::string_view::npos) {
            throw ParseError("expected edge:ID@p/q, got '" + std::string(text) + "'");
        }
        int e = g.edge_index(std::string(rest.substr(0, at)));
        Rational off = rational_from_string(rest.substr(at + 1));
        return PointOnGraph::interior(g, e, off);
    }
    throw ParseError("points are written vertex:NAME or edge:ID@p/q, got '" + std::string(text) +
                     "'");
}

json measure_to_json(const MetricGraph& g, const MeasureTable& mu) {
    json rows = json::array();
    for (const auto& row : mu.rows) {
        rows.push_back({{"segment", g.edge(row.edge).id},
                        {"density", rational_to_string(row.density)},
                        {"mass", rational_to_string(row.mass)}});
    }
    return json{{"segments", rows}, {"total_mass", rational_to_string(mu.total_mass())}};
}

std::string measure_to_csv(const MetricGraph& g, const MeasureTable& mu) {
    std::ostringstream out;
    out << "segment,density,mass\n";
    for (const auto& row : mu.rows) {
        out << g.edge(row.edge).id << ',' << rational_to_string(row.density) << ','
            << rational_to_string(row.mass) << '\n';
    }
    out << "total,," << rational_to_string(mu.total_mass()) << '\n';
    return out.str();
}

json locus_to_json(const MetricGraph& g, const WeierstrassLocus& locus) {
    json points = json::array();
    for (const auto& p : locus.points) points.push_back(point_to_json(p, g));
    json intervals = json::array();
    for (const auto& s : locus.intervals) {
        intervals.push_back({{"edge", g.edge(s.edge).id},
                             {"from", rational_to_string(s.lo)},
                             {"to", rational_to_string(s.hi)}});
    }
    json undecided = json::array();
    for (const auto& s : locus.undecided) {
        undecided.push_back({{"edge", g.edge(s.edge).id},
                             {"from", rational_to_string(s.lo)},
                             {"to", rational_to_string(s.hi)}});
    }
    return json{{"degree", locus.degree},
                {"generic", locus.generic},
                {"intervals", intervals},
                {"points", points},
                {"rank", locus.rank},
                {"undecided", undecided}};
}

json report_to_json(const MetricGraph& g, const ExperimentResult& result) {
    json rows = json::array();
    for (const auto& row : result.rows) {
        rows.push_back({{"N", row.degree},
                        {"segment", g.edge(row.edge).id},
                        {"count", row.count},
                        {"mu", rational_to_string(row.mu)},
                        {"lower", rational_to_string(row.lower)},
                        {"upper", rational_to_string(row.upper)},
                        {"bound_ok", row.bound_ok},
                        {"delta", rational_to_string(row.delta)},
                        {"deviation", rational_to_string(row.deviation)}});
    }
    return json{{"rows", rows},
                {"summary",
                 {{"all_bounds_hold", result.summary.all_bounds_hold},
                  {"existence_holds", result.summary.existence_holds},
                  {"max_deviation", rational_to_string(result.summary.max_deviation)}}}};
}

std::string report_to_csv(const MetricGraph& g, const ExperimentResult& result) {
    std::ostringstream out;
    out << "N,segment,count,mu_num,mu_den,lower,upper,bound_ok,delta_minus_mu_times_N\n";
    for (const auto& row : result.rows) {
        out << row.degree << ',' << g.edge(row.edge).id << ',' << row.count << ','
            << row.mu.get_num().get_str() << ',' << row.mu.get_den().get_str() << ','
            << rational_to_string(row.lower) << ',' << rational_to_string(row.upper) << ','
            << (row.bound_ok ? "true" : "false") << ',' << rational_to_string(row.deviation)
            << '\n';
    }
    return out.str();
}

}  // namespace tropweier
