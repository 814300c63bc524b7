#include "tropweier/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "tropweier/errors.hpp"

namespace tropweier {

PointOnGraph PointOnGraph::vertex(int v) {
    PointOnGraph p;
    p.vertex_ = v;
    return p;
}

PointOnGraph PointOnGraph::interior(const MetricGraph& g, int edge, Rational offset) {
    const auto& e = g.edge(edge);
    if (offset < 0 || offset > e.length) {
        throw Error("offset " + rational_to_string(offset) + " outside edge " + e.id);
    }
    if (offset == 0) return vertex(e.u);
    if (offset == e.length) return vertex(e.v);
    PointOnGraph p;
    p.edge_ = edge;
    p.offset_ = std::move(offset);
    return p;
}

bool PointOnGraph::operator==(const PointOnGraph& o) const {
    if (is_vertex() != o.is_vertex()) return false;
    if (is_vertex()) return vertex_ == o.vertex_;
    return edge_ == o.edge_ && offset_ == o.offset_;
}

bool PointOnGraph::operator<(const PointOnGraph& o) const {
    if (is_vertex() != o.is_vertex()) return is_vertex();
    if (is_vertex()) return vertex_ < o.vertex_;
    if (edge_ != o.edge_) return edge_ < o.edge_;
    return offset_ < o.offset_;
}

MetricGraph MetricGraph::validate_model(std::vector<std::string> vertex_names,
                                        std::vector<RawEdge> edges) {
    MetricGraph g;
    if (vertex_names.empty()) throw DanglingEndpoint("graph has no vertices");
    std::set<std::string> seen;
    for (const auto& name : vertex_names) {
        if (!seen.insert(name).second) throw DanglingEndpoint("duplicate vertex id '" + name + "'");
    }
    g.vertex_names_ = std::move(vertex_names);
    g.build_index();

    std::set<std::string> edge_ids;
    for (auto& re : edges) {
        if (!edge_ids.insert(re.id).second) {
            throw DanglingEndpoint("duplicate edge id '" + re.id + "'");
        }
        auto u = g.vertex_by_name_.find(re.u);
        auto v = g.vertex_by_name_.find(re.v);
        if (u == g.vertex_by_name_.end()) throw DanglingEndpoint("edge '" + re.id + "' references unknown vertex '" + re.u + "'");
        if (v == g.vertex_by_name_.end()) throw DanglingEndpoint("edge '" + re.id + "' references unknown vertex '" + re.v + "'");
        if (re.length <= 0) {
            throw NonpositiveLength("edge '" + re.id + "' has length " + rational_to_string(re.length));
        }
        g.edges_.push_back(Edge{std::move(re.id), u->second, v->second, std::move(re.length)});
    }
    g.build_index();

    // Connectivity over the vertex set.
    std::vector<char> visited(g.vertex_count(), 0);
    std::queue<int> frontier;
    frontier.push(0);
    visited[0] = 1;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (auto [e, end] : g.incident_[v]) {
            int w = end == 0 ? g.edges_[e].v : g.edges_[e].u;
            if (!visited[w]) {
                visited[w] = 1;
                frontier.push(w);
            }
        }
    }
    if (std::find(visited.begin(), visited.end(), 0) != visited.end()) {
        throw DisconnectedGraph("graph is not connected");
    }
    return g;
}

void MetricGraph::build_index() {
    vertex_by_name_.clear();
    for (int i = 0; i < vertex_count(); ++i) vertex_by_name_[vertex_names_[i]] = i;
    edge_by_id_.clear();
    incident_.assign(vertex_count(), {});
    for (int e = 0; e < edge_count(); ++e) {
        edge_by_id_[edges_[e].id] = e;
        incident_[edges_[e].u].emplace_back(e, 0);
        incident_[edges_[e].v].emplace_back(e, 1);
    }
}

int MetricGraph::vertex_index(const std::string& name) const {
    auto it = vertex_by_name_.find(name);
    if (it == vertex_by_name_.end()) throw Error("unknown vertex '" + name + "'");
    return it->second;
}

int MetricGraph::edge_index(const std::string& id) const {
    auto it = edge_by_id_.find(id);
    if (it == edge_by_id_.end()) throw Error("unknown edge '" + id + "'");
    return it->second;
}

Rational MetricGraph::total_length() const {
    Rational total = 0;
    for (const auto& e : edges_) total += e.length;
    return total;
}

bool MetricGraph::connected_without_edge(int e) const {
    if (is_loop(e)) return true;
    int src = edges_[e].u, dst = edges_[e].v;
    std::vector<char> visited(vertex_count(), 0);
    std::queue<int> frontier;
    frontier.push(src);
    visited[src] = 1;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (auto [f, end] : incident_[v]) {
            if (f == e) continue;
            int w = end == 0 ? edges_[f].v : edges_[f].u;
            if (!visited[w]) {
                visited[w] = 1;
                frontier.push(w);
            }
        }
    }
    return visited[dst];
}

bool MetricGraph::is_bridge(int e) const { return !connected_without_edge(e); }

int MetricGraph::valence(const PointOnGraph& x) const {
    if (!x.is_vertex()) return 2;
    return static_cast<int>(incident_[x.vertex_index()].size());
}

SegmentClass MetricGraph::segment_class(const Segment& s) const {
    const auto& e = edges_[s.edge];
    bool whole = s.lo == 0 && s.hi == e.length;
    if (whole && e.u == e.v) return SegmentClass::loop;
    // Removing the open interval (lo, hi) separates the segment endpoints
    // iff u and v are disconnected without the rest of the edge; when the
    // segment is proper the leftover edge stubs keep their ends attached to
    // u and v, so the test is the same.
    if (!connected_without_edge(s.edge)) return SegmentClass::bridge;
    return SegmentClass::ordinary;
}

std::vector<Rational> MetricGraph::vertex_distances(const std::vector<int>& sources) const {
    const Rational unset(-1);
    std::vector<Rational> dist(vertex_count(), unset);
    using Item = std::pair<Rational, int>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
    for (int s : sources) {
        dist[s] = 0;
        heap.emplace(0, s);
    }
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (dist[v] != d) continue;
        for (auto [e, end] : incident_[v]) {
            int w = end == 0 ? edges_[e].v : edges_[e].u;
            Rational cand = d + edges_[e].length;
            if (dist[w] == unset || cand < dist[w]) {
                dist[w] = cand;
                heap.emplace(cand, w);
            }
        }
    }
    return dist;
}

Rational MetricGraph::path_distance(const PointOnGraph& x, const PointOnGraph& y) const {
    if (x == y) return 0;

    // Exits of a point: (vertex, offset cost) pairs.
    auto exits = [&](const PointOnGraph& p) {
        std::vector<std::pair<int, Rational>> out;
        if (p.is_vertex()) {
            out.emplace_back(p.vertex_index(), Rational(0));
        } else {
            const auto& e = edges_[p.edge_index()];
            out.emplace_back(e.u, p.offset());
            out.emplace_back(e.v, e.length - p.offset());
        }
        return out;
    };

    std::optional<Rational> best;
    auto consider = [&](Rational d) {
        if (!best || d < *best) best = std::move(d);
    };

    // Direct within one edge.
    if (!x.is_vertex() && !y.is_vertex() && x.edge_index() == y.edge_index()) {
        consider(rational_abs(x.offset() - y.offset()));
    }

    auto ys = exits(y);
    for (auto& [vx, cx] : exits(x)) {
        auto dist = vertex_distances({vx});
        for (auto& [vy, cy] : ys) consider(cx + dist[vy] + cy);
    }
    return *best;
}

std::string MetricGraph::describe_point(const PointOnGraph& x) const {
    if (x.is_vertex()) return "vertex:" + vertex_names_[x.vertex_index()];
    return "edge:" + edges_[x.edge_index()].id + "@" + rational_to_string(x.offset());
}

RefinementMap::RefinementMap(const MetricGraph& base, const std::vector<PointOnGraph>& points)
    : base_(&base) {
    std::vector<std::set<Rational>> cut_sets(base.edge_count());
    for (const auto& p : points) {
        if (!p.is_vertex()) cut_sets[p.edge_index()].insert(p.offset());
    }

    MetricGraph g;
    g.vertex_names_ = base.vertex_names_;
    refined_vertex_to_base_.reserve(base.vertex_count());
    for (int v = 0; v < base.vertex_count(); ++v) {
        refined_vertex_to_base_.push_back(PointOnGraph::vertex(v));
    }

    cuts_.resize(base.edge_count());
    cut_vertices_.resize(base.edge_count());
    sub_edges_.resize(base.edge_count());

    for (int e = 0; e < base.edge_count(); ++e) {
        const auto& be = base.edge(e);
        cuts_[e].assign(cut_sets[e].begin(), cut_sets[e].end());
        for (const auto& off : cuts_[e]) {
            int nv = static_cast<int>(g.vertex_names_.size());
            g.vertex_names_.push_back(be.id + "@" + rational_to_string(off));
            cut_vertices_[e].push_back(nv);
            refined_vertex_to_base_.push_back(PointOnGraph::interior(base, e, off));
        }
        int prev_vertex = be.u;
        Rational prev_off = 0;
        const int pieces = static_cast<int>(cuts_[e].size()) + 1;
        for (int k = 0; k < pieces; ++k) {
            bool last = k == pieces - 1;
            int next_vertex = last ? be.v : cut_vertices_[e][k];
            Rational next_off = last ? be.length : cuts_[e][k];
            int ne = static_cast<int>(g.edges_.size());
            std::string id = pieces == 1 ? be.id : be.id + "#" + std::to_string(k);
            g.edges_.push_back(MetricGraph::Edge{std::move(id), prev_vertex, next_vertex,
                                                 next_off - prev_off});
            sub_edges_[e].push_back(ne);
            refined_edge_base_.push_back(e);
            refined_edge_start_.push_back(prev_off);
            prev_vertex = next_vertex;
            prev_off = std::move(next_off);
        }
    }
    g.build_index();
    refined_ = std::move(g);
}

PointOnGraph RefinementMap::to_refined(const PointOnGraph& p) const {
    if (p.is_vertex()) return p;  // base vertices keep their indices
    int e = p.edge_index();
    const auto& cuts = cuts_[e];
    // Find the sub-interval containing the offset.
    int k = static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), p.offset()) - cuts.begin());
    if (k > 0 && cuts[k - 1] == p.offset()) return PointOnGraph::vertex(cut_vertices_[e][k - 1]);
    int sub = sub_edges_[e][k];
    Rational start = k == 0 ? Rational(0) : cuts[k - 1];
    return PointOnGraph::interior(refined_, sub, p.offset() - start);
}

PointOnGraph RefinementMap::to_base(const PointOnGraph& p) const {
    if (p.is_vertex()) return refined_vertex_to_base_[p.vertex_index()];
    int sub = p.edge_index();
    int e = refined_edge_base_[sub];
    return PointOnGraph::interior(*base_, e, refined_edge_start_[sub] + p.offset());
}

}  // namespace tropweier
