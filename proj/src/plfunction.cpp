#include "tropweier/plfunction.hpp"

#include <algorithm>

#include "tropweier/errors.hpp"

namespace tropweier {

PLFunction::PLFunction(const MetricGraph& g)
    : graph_(&g),
      vertex_values_(g.vertex_count(), Rational(0)),
      cuts_(g.edge_count()),
      slopes_(g.edge_count(), std::vector<Rational>{Rational(0)}) {}

PLFunction PLFunction::constant(const MetricGraph& g, const Rational& c) {
    PLFunction f(g);
    for (auto& v : f.vertex_values_) v = c;
    return f;
}

Rational PLFunction::evaluate(const PointOnGraph& p) const {
    if (p.is_vertex()) return vertex_values_[p.vertex_index()];
    int e = p.edge_index();
    const auto& edge = graph_->edge(e);
    Rational value = vertex_values_[edge.u];
    Rational prev = 0;
    const auto& cuts = cuts_[e];
    const auto& slopes = slopes_[e];
    for (size_t k = 0; k < slopes.size(); ++k) {
        Rational end = k < cuts.size() ? cuts[k] : edge.length;
        if (p.offset() <= end) {
            return value + slopes[k] * (p.offset() - prev);
        }
        value += slopes[k] * (end - prev);
        prev = std::move(end);
    }
    return value;
}

Rational PLFunction::slope_at(int e, const Rational& offset) const {
    const auto& cuts = cuts_[e];
    size_t k = std::upper_bound(cuts.begin(), cuts.end(), offset) - cuts.begin();
    return slopes_[e][k];
}

std::vector<Rational> PLFunction::breakpoints_in(int e, const Rational& lo,
                                                 const Rational& hi) const {
    std::vector<Rational> out;
    for (const auto& c : cuts_[e]) {
        if (c > lo && c < hi) out.push_back(c);
    }
    return out;
}

namespace {

// Merges two edge profiles with a binary op applied to overlapping slopes.
template <typename Op>
void merge_profiles(const std::vector<Rational>& cuts_a, const std::vector<Rational>& slopes_a,
                    const std::vector<Rational>& cuts_b, const std::vector<Rational>& slopes_b,
                    std::vector<Rational>& cuts_out, std::vector<Rational>& slopes_out, Op op) {
    cuts_out.clear();
    slopes_out.clear();
    size_t ia = 0, ib = 0;
    while (true) {
        slopes_out.push_back(op(slopes_a[ia], slopes_b[ib]));
        bool more_a = ia < cuts_a.size();
        bool more_b = ib < cuts_b.size();
        if (!more_a && !more_b) break;
        if (more_a && (!more_b || cuts_a[ia] < cuts_b[ib])) {
            cuts_out.push_back(cuts_a[ia++]);
        } else if (more_b && (!more_a || cuts_b[ib] < cuts_a[ia])) {
            cuts_out.push_back(cuts_b[ib++]);
        } else {
            cuts_out.push_back(cuts_a[ia]);
            ++ia;
            ++ib;
        }
    }
}

}  // namespace

PLFunction& PLFunction::operator+=(const PLFunction& o) {
    for (int v = 0; v < graph_->vertex_count(); ++v) vertex_values_[v] += o.vertex_values_[v];
    for (int e = 0; e < graph_->edge_count(); ++e) {
        std::vector<Rational> cuts, slopes;
        merge_profiles(cuts_[e], slopes_[e], o.cuts_[e], o.slopes_[e], cuts, slopes,
                       [](const Rational& a, const Rational& b) { return a + b; });
        cuts_[e] = std::move(cuts);
        slopes_[e] = std::move(slopes);
    }
    canonicalize();
    return *this;
}

PLFunction& PLFunction::operator-=(const PLFunction& o) {
    for (int v = 0; v < graph_->vertex_count(); ++v) vertex_values_[v] -= o.vertex_values_[v];
    for (int e = 0; e < graph_->edge_count(); ++e) {
        std::vector<Rational> cuts, slopes;
        merge_profiles(cuts_[e], slopes_[e], o.cuts_[e], o.slopes_[e], cuts, slopes,
                       [](const Rational& a, const Rational& b) { return a - b; });
        cuts_[e] = std::move(cuts);
        slopes_[e] = std::move(slopes);
    }
    canonicalize();
    return *this;
}

PLFunction PLFunction::operator-() const {
    PLFunction f = *this;
    f.scale(Rational(-1));
    return f;
}

PLFunction& PLFunction::scale(const Rational& c) {
    for (auto& v : vertex_values_) v *= c;
    for (auto& edge_slopes : slopes_) {
        for (auto& s : edge_slopes) s *= c;
    }
    canonicalize();
    return *this;
}

PLFunction& PLFunction::add_constant(const Rational& c) {
    for (auto& v : vertex_values_) v += c;
    return *this;
}

PLFunction PLFunction::clip_below(const Rational& c) const {
    PLFunction out(*graph_);
    for (int v = 0; v < graph_->vertex_count(); ++v) {
        out.vertex_values_[v] = std::max(vertex_values_[v], c);
    }
    for (int e = 0; e < graph_->edge_count(); ++e) {
        const auto& edge = graph_->edge(e);
        std::vector<Rational> cuts, slopes;
        Rational value = vertex_values_[edge.u];
        Rational prev = 0;
        const auto& my_cuts = cuts_[e];
        const auto& my_slopes = slopes_[e];
        for (size_t k = 0; k < my_slopes.size(); ++k) {
            Rational end = k < my_cuts.size() ? my_cuts[k] : edge.length;
            Rational next_value = value + my_slopes[k] * (end - prev);
            const Rational& s = my_slopes[k];
            // Crossing point of value + s * t == c within this piece.
            if ((value < c && next_value > c) || (value > c && next_value < c)) {
                Rational t = prev + (c - value) / s;
                if (value < c) {  // below then above: flat, then original slope
                    slopes.push_back(0);
                    cuts.push_back(t);
                    slopes.push_back(s);
                } else {
                    slopes.push_back(s);
                    cuts.push_back(t);
                    slopes.push_back(0);
                }
            } else {
                slopes.push_back((value <= c && next_value <= c) ? Rational(0) : s);
            }
            if (k < my_cuts.size()) cuts.push_back(end);
            value = std::move(next_value);
            prev = std::move(end);
        }
        out.cuts_[e] = std::move(cuts);
        out.slopes_[e] = std::move(slopes);
    }
    out.canonicalize();
    return out;
}

PLFunction PLFunction::clip_above(const Rational& c) const {
    PLFunction f = -*this;
    f = f.clip_below(-c);
    return -f;
}

bool PLFunction::integer_slopes() const {
    for (const auto& edge_slopes : slopes_) {
        for (const auto& s : edge_slopes) {
            if (!is_integer(s)) return false;
        }
    }
    return true;
}

Rational PLFunction::min_value() const {
    Rational best = vertex_values_[0];
    for (const auto& v : vertex_values_) best = std::min(best, v);
    // Interior extrema occur at breakpoints.
    for (int e = 0; e < graph_->edge_count(); ++e) {
        for (const auto& c : cuts_[e]) {
            best = std::min(best, evaluate(PointOnGraph::interior(*graph_, e, c)));
        }
    }
    return best;
}

Rational PLFunction::max_value() const {
    Rational best = vertex_values_[0];
    for (const auto& v : vertex_values_) best = std::max(best, v);
    for (int e = 0; e < graph_->edge_count(); ++e) {
        for (const auto& c : cuts_[e]) {
            best = std::max(best, evaluate(PointOnGraph::interior(*graph_, e, c)));
        }
    }
    return best;
}

void PLFunction::set_profile(int e, std::vector<Rational> cuts, std::vector<Rational> slopes) {
    if (slopes.size() != cuts.size() + 1) throw Error("malformed edge profile");
    cuts_[e] = std::move(cuts);
    slopes_[e] = std::move(slopes);
}

void PLFunction::set_vertex_value(int v, Rational value) { vertex_values_[v] = std::move(value); }

void PLFunction::check_continuity() const {
    for (int e = 0; e < graph_->edge_count(); ++e) {
        const auto& edge = graph_->edge(e);
        Rational value = vertex_values_[edge.u];
        Rational prev = 0;
        for (size_t k = 0; k < slopes_[e].size(); ++k) {
            Rational end = k < cuts_[e].size() ? cuts_[e][k] : edge.length;
            value += slopes_[e][k] * (end - prev);
            prev = std::move(end);
        }
        if (value != vertex_values_[edge.v]) {
            throw Error("discontinuity across edge " + edge.id);
        }
    }
}

void PLFunction::canonicalize() {
    for (int e = 0; e < graph_->edge_count(); ++e) {
        auto& cuts = cuts_[e];
        auto& slopes = slopes_[e];
        std::vector<Rational> new_cuts;
        std::vector<Rational> new_slopes;
        new_slopes.push_back(slopes[0]);
        for (size_t k = 0; k < cuts.size(); ++k) {
            if (slopes[k + 1] == new_slopes.back()) continue;
            new_cuts.push_back(cuts[k]);
            new_slopes.push_back(slopes[k + 1]);
        }
        cuts = std::move(new_cuts);
        slopes = std::move(new_slopes);
    }
}

PLFunction PLFunction::from_refined_vertex_values(const RefinementMap& ref,
                                                  const std::vector<Rational>& values) {
    const MetricGraph& base = ref.base();
    const MetricGraph& fine = ref.refined();
    PLFunction f(base);
    for (int v = 0; v < base.vertex_count(); ++v) f.vertex_values_[v] = values[v];
    for (int e = 0; e < base.edge_count(); ++e) {
        const auto& cuts = ref.cuts(e);
        std::vector<Rational> slopes;
        for (int sub : ref.sub_edges(e)) {
            const auto& se = fine.edge(sub);
            slopes.push_back((values[se.v] - values[se.u]) / se.length);
        }
        f.cuts_[e] = cuts;
        f.slopes_[e] = std::move(slopes);
    }
    f.canonicalize();
    return f;
}

PLFunction PLFunction::pull_back(const RefinementMap& ref, const PLFunction& fine) {
    const MetricGraph& base = ref.base();
    PLFunction f(base);
    for (int v = 0; v < base.vertex_count(); ++v) {
        // Base vertices keep their indices in the refined model.
        f.vertex_values_[v] = fine.value_at_vertex(v);
    }
    for (int e = 0; e < base.edge_count(); ++e) {
        std::vector<Rational> cuts;
        std::vector<Rational> slopes;
        const auto& subs = ref.sub_edges(e);
        for (size_t k = 0; k < subs.size(); ++k) {
            if (k > 0) cuts.push_back(ref.cuts(e)[k - 1]);
            const Rational& start = ref.sub_edge_start(subs[k]);
            const auto& sub_cuts = fine.breakpoints(subs[k]);
            const auto& sub_slopes = fine.slopes(subs[k]);
            for (size_t i = 0; i < sub_slopes.size(); ++i) {
                slopes.push_back(sub_slopes[i]);
                if (i < sub_cuts.size()) cuts.push_back(start + sub_cuts[i]);
            }
        }
        f.cuts_[e] = std::move(cuts);
        f.slopes_[e] = std::move(slopes);
    }
    f.canonicalize();
    return f;
}

PLFunction PLFunction::distance_function(const MetricGraph& g,
                                         const std::vector<char>& vertex_is_source,
                                         const std::vector<char>& edge_in_source_set) {
    std::vector<int> sources;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (vertex_is_source[v]) sources.push_back(v);
    }
    auto dist = g.vertex_distances(sources);
    PLFunction f(g);
    for (int v = 0; v < g.vertex_count(); ++v) f.vertex_values_[v] = dist[v];
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        if (edge_in_source_set[e]) {
            f.cuts_[e].clear();
            f.slopes_[e] = {Rational(0)};
            continue;
        }
        const Rational& du = dist[edge.u];
        const Rational& dv = dist[edge.v];
        // min(du + t, dv + L - t); apex where the two branches meet.
        Rational apex = (edge.length + dv - du) / 2;
        if (apex <= 0) {
            f.cuts_[e].clear();
            f.slopes_[e] = {Rational(-1)};
        } else if (apex >= edge.length) {
            f.cuts_[e].clear();
            f.slopes_[e] = {Rational(1)};
        } else {
            f.cuts_[e] = {apex};
            f.slopes_[e] = {Rational(1), Rational(-1)};
        }
    }
    f.canonicalize();
    return f;
}

}  // namespace tropweier
