// Command-line front end: exact divisor-theoretic computations on metric
// graphs with scriptable, rational-valued output.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tropweier/equidist.hpp"
#include "tropweier/errors.hpp"
#include "tropweier/json_io.hpp"

namespace tw = tropweier;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitComputation = 4;

struct CommandError {
    int code;
    std::string type;
    std::string message;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw tw::Error("cannot write to '" + out_path + "'");
        out << text;
    }
}

tw::SweepOptions sweep_options_from_env() {
    tw::SweepOptions opts;
    if (const char* cap = std::getenv("TROPWEIER_MAX_REFINE")) {
        opts.max_refine = std::atoi(cap);
        if (opts.max_refine < 1) throw tw::Error("TROPWEIER_MAX_REFINE must be positive");
    }
    return opts;
}

std::vector<long> parse_degrees(const std::string& text) {
    std::vector<long> degrees;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        degrees.push_back(std::stol(token));
    }
    if (degrees.empty()) throw tw::ParseError("--degrees needs a comma-separated list");
    return degrees;
}

void print_divisor(const tw::MetricGraph& g, const tw::Divisor& d) {
    for (const auto& [p, c] : d.coeffs()) {
        std::cout << "  " << g.describe_point(p) << "  x" << c << '\n';
    }
    if (d.empty()) std::cout << "  (zero divisor)\n";
}

void print_slope_table(const tw::MetricGraph& g, const tw::PLFunction& f) {
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        const auto& cuts = f.breakpoints(e);
        const auto& slopes = f.slopes(e);
        tw::Rational prev = 0;
        for (size_t k = 0; k < slopes.size(); ++k) {
            tw::Rational end = k < cuts.size() ? cuts[k] : edge.length;
            std::cout << "  " << edge.id << " [" << tw::rational_to_string(prev) << ", "
                      << tw::rational_to_string(end)
                      << "]  slope " << tw::rational_to_string(slopes[k]) << '\n';
            prev = end;
        }
    }
}

int run(int argc, char** argv) {
    CLI::App app{"exact divisor computations on metric graphs"};
    app.require_subcommand(1);

    std::string graph_path, divisor_path, out_path, format = "csv";
    std::string basepoint_text, from_text, to_text, source_text, sink_text, degrees_text;
    unsigned long long seed = 0;
    long denom = 1000;
    int mesh_check = 0;
    bool emit_normalized = false;

    auto add_graph = [&](CLI::App* cmd) {
        cmd->add_option("--graph", graph_path, "graph JSON file")->required();
    };

    auto* info = app.add_subcommand("info", "vertices, edges, genus, bridges");
    add_graph(info);
    info->add_flag("--emit-normalized", emit_normalized, "print the canonical graph JSON");

    auto* measure = app.add_subcommand("measure", "canonical measure per segment");
    add_graph(measure);
    measure->add_option("--format", format, "csv or json");
    measure->add_option("--out", out_path, "write to file instead of stdout");

    auto* resistance = app.add_subcommand("resistance", "effective resistance between points");
    add_graph(resistance);
    resistance->add_option("--from", from_text, "first point")->required();
    resistance->add_option("--to", to_text, "second point")->required();

    auto* voltage = app.add_subcommand("voltage", "potential for a unit source/sink current");
    add_graph(voltage);
    voltage->add_option("--source", source_text, "current source")->required();
    voltage->add_option("--sink", sink_text, "current sink (grounded)")->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "basepoint-reduced divisor with witness");
    add_graph(reduce_cmd);
    reduce_cmd->add_option("--divisor", divisor_path, "divisor JSON file")->required();
    reduce_cmd->add_option("--basepoint", basepoint_text, "basepoint")->required();

    auto* rank_cmd = app.add_subcommand("rank", "Baker-Norine rank of a divisor");
    add_graph(rank_cmd);
    rank_cmd->add_option("--divisor", divisor_path, "divisor JSON file")->required();

    auto* weier = app.add_subcommand("weierstrass", "Weierstrass locus of a divisor");
    add_graph(weier);
    weier->add_option("--divisor", divisor_path, "divisor JSON file")->required();
    weier->add_option("--mesh-check", mesh_check, "cross-check with a mesh of this resolution");
    weier->add_option("--format", format, "csv or json");

    auto* equi = app.add_subcommand("equidistribute", "locus counts across a degree ladder");
    add_graph(equi);
    equi->add_option("--degrees", degrees_text, "comma-separated degree list")->required();
    equi->add_option("--seed", seed, "RNG seed");
    equi->add_option("--denom", denom, "offset denominator bound");
    equi->add_option("--out", out_path, "write report to file");
    equi->add_option("--format", format, "csv or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        auto g = tw::load_graph(graph_path);

        if (info->parsed()) {
            if (emit_normalized) {
                std::cout << tw::graph_to_json(g).dump(2) << '\n';
                return 0;
            }
            std::cout << "vertices: " << g.vertex_count() << '\n';
            std::cout << "edges: " << g.edge_count() << '\n';
            std::cout << "genus: " << g.genus() << '\n';
            std::cout << "total length: " << tw::rational_to_string(g.total_length()) << '\n';
            std::cout << "bridges:";
            bool any = false;
            for (int e = 0; e < g.edge_count(); ++e) {
                if (g.is_bridge(e)) {
                    std::cout << ' ' << g.edge(e).id;
                    any = true;
                }
            }
            std::cout << (any ? "\n" : " none\n");
            return 0;
        }

        if (measure->parsed()) {
            auto mu = tw::canonical_measure(g);
            emit(format == "json" ? tw::measure_to_json(g, mu).dump(2)
                                  : tw::measure_to_csv(g, mu),
                 out_path);
            return 0;
        }

        if (resistance->parsed()) {
            auto x = tw::parse_point(g, from_text);
            auto y = tw::parse_point(g, to_text);
            std::cout << tw::rational_to_string(tw::resistance(g, x, y)) << '\n';
            return 0;
        }

        if (voltage->parsed()) {
            auto j = tw::voltage_function(g, tw::parse_point(g, source_text),
                                          tw::parse_point(g, sink_text));
            std::cout << "values at vertices:\n";
            for (int v = 0; v < g.vertex_count(); ++v) {
                std::cout << "  " << g.vertex_name(v) << " = "
                          << tw::rational_to_string(j.function.value_at_vertex(v)) << '\n';
            }
            std::cout << "slopes:\n";
            print_slope_table(g, j.function);
            return 0;
        }

        if (reduce_cmd->parsed()) {
            auto d = tw::load_divisor(divisor_path, g);
            auto q = tw::parse_point(g, basepoint_text);
            auto r = tw::reduce(g, q, d);
            std::cout << "reduced divisor:\n";
            print_divisor(g, r.divisor);
            std::cout << "witness slopes:\n";
            print_slope_table(g, r.witness);
            return 0;
        }

        if (rank_cmd->parsed()) {
            auto d = tw::load_divisor(divisor_path, g);
            std::cout << tw::rank(g, d) << '\n';
            return 0;
        }

        if (weier->parsed()) {
            auto d = tw::load_divisor(divisor_path, g);
            auto locus = tw::weierstrass_locus(g, d, sweep_options_from_env());
            if (mesh_check > 0) {
                auto hits = tw::mesh_oracle(g, d, mesh_check);
                std::set<tw::PointOnGraph> reported(locus.points.begin(), locus.points.end());
                auto inside_interval = [&](const tw::PointOnGraph& p) {
                    for (const auto& s : locus.intervals) {
                        if (!p.is_vertex() && p.edge_index() == s.edge && p.offset() >= s.lo &&
                            p.offset() <= s.hi) {
                            return true;
                        }
                        if (p.is_vertex()) {
                            const auto& edge = g.edge(s.edge);
                            if ((s.lo == 0 && edge.u == p.vertex_index()) ||
                                (s.hi == edge.length && edge.v == p.vertex_index())) {
                                return true;
                            }
                        }
                    }
                    return false;
                };
                for (const auto& h : hits) {
                    if (!reported.count(h) && !inside_interval(h)) {
                        throw tw::Error("mesh-check found an unreported locus point at " +
                                        g.describe_point(h));
                    }
                }
            }
            if (format == "json") {
                std::cout << tw::locus_to_json(g, locus).dump(2) << '\n';
                return 0;
            }
            std::cout << "degree: " << locus.degree << "\nrank: " << locus.rank
                      << "\ngeneric: " << (locus.generic ? "true" : "false") << '\n';
            std::cout << "points:\n";
            for (const auto& p : locus.points) std::cout << "  " << g.describe_point(p) << '\n';
            if (!locus.intervals.empty()) {
                std::cout << "intervals:\n";
                for (const auto& s : locus.intervals) {
                    std::cout << "  " << g.edge(s.edge).id << " [" << tw::rational_to_string(s.lo)
                              << ", " << tw::rational_to_string(s.hi) << "]\n";
                }
            }
            if (!locus.undecided.empty()) {
                std::cout << "undecided windows:\n";
                for (const auto& s : locus.undecided) {
                    std::cout << "  " << g.edge(s.edge).id << " [" << tw::rational_to_string(s.lo)
                              << ", " << tw::rational_to_string(s.hi) << "]\n";
                }
            }
            if (locus.generic) {
                auto mu = tw::canonical_measure(g);
                long genus = g.genus();
                std::cout << "per-segment counts (count, N*mu - 3g - 1, N*mu + g + 2):\n";
                for (int e = 0; e < g.edge_count(); ++e) {
                    tw::Rational nmu = tw::Rational(locus.degree) * mu.mass(e);
                    std::cout << "  " << g.edge(e).id << "  "
                              << tw::count_on_closed_edge(locus, g, e) << "  "
                              << tw::rational_to_string(nmu - 3 * genus - 1) << "  "
                              << tw::rational_to_string(nmu + genus + 2) << '\n';
                }
            }
            return 0;
        }

        if (equi->parsed()) {
            tw::ExperimentConfig cfg;
            cfg.degrees = parse_degrees(degrees_text);
            cfg.seed = seed;
            cfg.denominator_bound = denom;
            cfg.sweep = sweep_options_from_env();
            auto result = tw::run_experiment(g, cfg);
            emit(format == "json" ? tw::report_to_json(g, result).dump(2)
                                  : tw::report_to_csv(g, result),
                 out_path);
            return 0;
        }
    } catch (const tw::ParseError& e) {
        std::cout << json{{"error", {{"type", "parse"}, {"message", e.what()}}}}.dump() << '\n';
        return kExitValidation;
    } catch (const tw::DisconnectedGraph& e) {
        std::cout << json{{"error", {{"type", "validation"}, {"message", e.what()}}}}.dump()
                  << '\n';
        return kExitValidation;
    } catch (const tw::NonpositiveLength& e) {
        std::cout << json{{"error", {{"type", "validation"}, {"message", e.what()}}}}.dump()
                  << '\n';
        return kExitValidation;
    } catch (const tw::DanglingEndpoint& e) {
        std::cout << json{{"error", {{"type", "validation"}, {"message", e.what()}}}}.dump()
                  << '\n';
        return kExitValidation;
    } catch (const tw::Error& e) {
        std::cout << json{{"error", {{"type", "computation"}, {"message", e.what()}}}}.dump()
                  << '\n';
        return kExitComputation;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
