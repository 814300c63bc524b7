#include "tropweier/weierstrass.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tropweier/errors.hpp"

namespace tropweier {

namespace {

struct Probe {
    PointOnGraph basepoint;
    Divisor reduced;
    PLFunction witness;  // Div(witness) = reduced - D
    long stack;          // chips of `reduced` sitting on the basepoint
};

// Shared machinery for locus sweeps: reduced-divisor probes with warm-start
// chaining, the slope-count certificate, and exact collision solving for the
// reverse-moving chip inside a certified window.
class SweepEngine {
public:
    SweepEngine(const MetricGraph& g, const Divisor& d, int rank, const SweepOptions& opts)
        : g_(g), d_(d), rank_(rank), degree_(d.degree()), opts_(opts),
          edge_index_(g.edge_count()) {}

    const Probe& probe(const PointOnGraph& x) {
        auto it = cache_.find(x);
        if (it != cache_.end()) return it->second;
        const Probe* hint = nearest_hint(x);
        ReducedDivisor red =
            hint ? reduce_with_hint(g_, x, d_,
                                    ReducedDivisor{hint->basepoint, hint->reduced, hint->witness})
                 : reduce(g_, x, d_);
        if (red.divisor.coeff(x) < rank_) {
            throw Error("internal: reduced divisor holds fewer than rank chips at the basepoint");
        }
        Probe p{x, std::move(red.divisor), std::move(red.witness), 0};
        p.stack = p.reduced.coeff(x);
        auto [slot, inserted] = cache_.emplace(x, std::move(p));
        if (!x.is_vertex()) edge_index_[x.edge_index()][x.offset()] = &slot->second;
        last_ = &slot->second;
        return slot->second;
    }

    bool is_w(const PointOnGraph& x) { return probe(x).stack >= rank_ + 1; }

    SegmentSweep sweep_edge(int e) {
        SegmentSweep out;
        out.edge = e;
        const auto& edge = g_.edge(e);
        out.start_vertex_weierstrass = is_w(PointOnGraph::vertex(edge.u));
        // a loop's two endpoints are one point; count it once
        out.end_vertex_weierstrass = edge.u == edge.v ? false : is_w(PointOnGraph::vertex(edge.v));
        std::set<Rational> points;
        std::vector<Segment> intervals, undecided;
        recurse(e, Rational(0), edge.length, 0, points, intervals, undecided);
        merge_windows(intervals);
        merge_windows(undecided);
        // points swallowed by an interval are part of that component
        for (const auto& t : points) {
            bool inside = false;
            for (const auto& s : intervals) {
                if (t >= s.lo && t <= s.hi) {
                    inside = true;
                    break;
                }
            }
            if (!inside) out.interior_points.push_back(t);
        }
        out.intervals = std::move(intervals);
        out.undecided = std::move(undecided);
        return out;
    }

private:
    PointOnGraph at(int e, const Rational& offset) const {
        return PointOnGraph::interior(g_, e, offset);
    }

    const Probe* nearest_hint(const PointOnGraph& x) const {
        if (!x.is_vertex()) {
            const auto& idx = edge_index_[x.edge_index()];
            if (!idx.empty()) {
                auto it = idx.lower_bound(x.offset());
                if (it == idx.end()) return std::prev(it)->second;
                if (it == idx.begin()) return it->second;
                auto before = std::prev(it);
                return (x.offset() - before->first <= it->first - x.offset()) ? before->second
                                                                              : it->second;
            }
        }
        return last_;
    }

    static void merge_windows(std::vector<Segment>& windows) {
        if (windows.empty()) return;
        std::sort(windows.begin(), windows.end(),
                  [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
        std::vector<Segment> merged;
        for (const auto& w : windows) {
            if (!merged.empty() && w.lo <= merged.back().hi) {
                merged.back().hi = std::max(merged.back().hi, w.hi);
            } else {
                merged.push_back(w);
            }
        }
        windows = std::move(merged);
    }

    // Chip positions of a probe's reduced divisor strictly inside (lo, hi)
    // of edge e, excluding the basepoint pile itself.
    static std::vector<Rational> chips_in(const Probe& p, int e, const Rational& lo,
                                          const Rational& hi) {
        std::vector<Rational> out;
        for (const auto& [off, c] : p.reduced.interior_chips(e)) {
            if (off > lo && off < hi) {
                if (!p.basepoint.is_vertex() && p.basepoint.edge_index() == e &&
                    p.basepoint.offset() == off) {
                    continue;
                }
                out.push_back(off);
            }
        }
        return out;
    }

    void recurse(int e, const Rational& lo, const Rational& hi, int depth,
                 std::set<Rational>& points, std::vector<Segment>& intervals,
                 std::vector<Segment>& undecided) {
        if (++work_ > kWorkLimit || depth > opts_.max_refine) {
            undecided.push_back(Segment{e, lo, hi});
            return;
        }
        const Probe& plo = probe(at(e, lo));
        const Probe& phi = probe(at(e, hi));
        PLFunction f = phi.witness - plo.witness;  // Div(f) = reduced(hi) - reduced(lo)
        if (!f.breakpoints_in(e, lo, hi).empty()) {
            split(e, lo, hi, depth, points, intervals, undecided);
            return;
        }
        // In a clean window the two reductions agree inside it, so any chip
        // there is shared. A shared chip is either stationary (the basepoint
        // crosses it without flux) or has looped around the graph back to
        // its place; splitting at it makes it a window boundary and restores
        // the flux count on each side.
        auto commons = chips_in(plo, e, lo, hi);
        if (!commons.empty()) {
            for (const auto& c : commons) {
                if (is_w(at(e, c))) points.insert(c);
            }
            Rational prev = lo;
            for (const auto& c : commons) {
                recurse(e, prev, c, depth, points, intervals, undecided);
                prev = c;
            }
            recurse(e, prev, hi, depth, points, intervals, undecided);
            return;
        }
        // No chips inside the window at either end: the witness slope counts
        // the transversal crossings exactly.
        Rational sigma = f.slope_at(e, (lo + hi) / 2);
        if (!is_integer(sigma)) {
            split(e, lo, hi, depth, points, intervals, undecided);
            return;
        }
        long moving = rank_ + rational_to_long(sigma);
        if (moving == 0) return;
        if (moving == 1) {
            solve_one(e, lo, hi, depth, points, intervals, undecided);
            return;
        }
        split(e, lo, hi, depth, points, intervals, undecided);
    }

    void split(int e, const Rational& lo, const Rational& hi, int depth,
               std::set<Rational>& points, std::vector<Segment>& intervals,
               std::vector<Segment>& undecided) {
        static const std::pair<int, int> kCutFractions[] = {
            {1, 2}, {9, 17}, {8, 17}, {10, 17}, {7, 17}, {11, 17}, {6, 17}, {12, 17}, {5, 17},
        };
        int w_hits = 0;
        for (auto [num, den] : kCutFractions) {
            Rational cut = lo + (hi - lo) * frac(num, den);
            const Probe& pc = probe(at(e, cut));
            if (pc.stack >= rank_ + 1) {
                points.insert(cut);
                ++w_hits;
                if (w_hits >= 3 && try_certify_interval(e, lo, hi, intervals)) return;
                continue;  // nudge the cut off the locus
            }
            recurse(e, lo, cut, depth + 1, points, intervals, undecided);
            recurse(e, cut, hi, depth + 1, points, intervals, undecided);
            return;
        }
        // every candidate cut landed on the locus
        if (!try_certify_interval(e, lo, hi, intervals)) {
            undecided.push_back(Segment{e, lo, hi});
        }
    }

    // Exactly one transversal crossing certified inside (lo, hi): track the
    // reverse-moving chip at three nearby basepoints, verify its integer
    // velocity, and solve the collision with the basepoint pile.
    void solve_one(int e, const Rational& lo, const Rational& hi, int depth,
                   std::set<Rational>& points, std::vector<Segment>& intervals,
                   std::vector<Segment>& undecided) {
        const Rational width = hi - lo;
        const Rational xs[3] = {lo + width / 4, lo + width / 2, lo + width * frac(3, 4)};
        const Probe* probes[3];
        for (int i = 0; i < 3; ++i) {
            probes[i] = &probe(at(e, xs[i]));
            if (probes[i]->stack >= rank_ + 1) {
                // The basepoint landed on the locus point itself. Distinguish
                // an isolated hit from an interval through it.
                Rational flank = width / 64;
                if (is_w(at(e, xs[i] - flank)) || is_w(at(e, xs[i] + flank))) {
                    if (try_certify_interval(e, lo, hi, intervals)) return;
                }
                points.insert(xs[i]);
                return;
            }
        }
        const Rational h = xs[1] - xs[0];
        const Rational& len = g_.edge(e).length;
        for (const auto& c1 : chips_in(*probes[0], e, Rational(0), len)) {
            for (const auto& c2 : chips_in(*probes[1], e, Rational(0), len)) {
                Rational v = (c2 - c1) / h;
                if (!is_integer(v) || v == 1) continue;
                if (rational_abs(v) > degree_ + 1) continue;
                Rational c3 = c2 + v * (xs[2] - xs[1]);
                if (c3 <= 0 || c3 >= len) continue;
                if (probes[2]->reduced.coeff(at(e, c3)) < 1) continue;
                Rational collision = (c1 - v * xs[0]) / (1 - v);
                if (collision <= lo || collision >= hi) continue;
                if (is_w(at(e, collision))) {
                    points.insert(collision);
                    return;
                }
            }
        }
        // No regime line resolved the crossing; narrow and re-certify.
        if (depth + 1 > opts_.max_refine) {
            undecided.push_back(Segment{e, lo, hi});
            return;
        }
        recurse(e, lo, xs[0], depth + 1, points, intervals, undecided);
        recurse(e, xs[0], xs[2], depth + 1, points, intervals, undecided);
        recurse(e, xs[2], hi, depth + 1, points, intervals, undecided);
    }

    bool try_certify_interval(int e, const Rational& lo, const Rational& hi,
                              std::vector<Segment>& intervals) {
        for (int k = 0; k <= 6; ++k) {
            if (!is_w(at(e, lo + (hi - lo) * frac(k, 6)))) return false;
        }
        intervals.push_back(Segment{e, lo, hi});
        return true;
    }

    const MetricGraph& g_;
    Divisor d_;
    int rank_;
    long degree_;
    SweepOptions opts_;
    std::map<PointOnGraph, Probe> cache_;
    std::vector<std::map<Rational, const Probe*>> edge_index_;
    const Probe* last_ = nullptr;
    long work_ = 0;
    static constexpr long kWorkLimit = 200000;
};

}  // namespace

bool is_weierstrass(const MetricGraph& g, const Divisor& d, const PointOnGraph& x) {
    int r = rank(g, d);
    if (r < 0) return false;
    auto red = reduce(g, x, d);
    return red.divisor.coeff(x) >= r + 1;
}

SegmentSweep weierstrass_on_segment(const MetricGraph& g, const Divisor& d, int edge,
                                    const SweepOptions& opts) {
    long n = d.degree();
    int r = rank(g, d);
    if (n < g.genus() || r != n - g.genus()) {
        throw NonGenericRank("rank " + std::to_string(r) + " differs from deg - g = " +
                             std::to_string(n - g.genus()));
    }
    SweepEngine engine(g, d, r, opts);
    return engine.sweep_edge(edge);
}

WeierstrassLocus weierstrass_locus(const MetricGraph& g, const Divisor& d,
                                   const SweepOptions& opts) {
    WeierstrassLocus locus;
    locus.degree = d.degree();
    locus.rank = rank(g, d);
    if (locus.rank < 0) return locus;

    SweepEngine engine(g, d, locus.rank, opts);
    std::set<PointOnGraph> points;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (engine.is_w(PointOnGraph::vertex(v))) points.insert(PointOnGraph::vertex(v));
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        SegmentSweep sweep = engine.sweep_edge(e);
        for (const auto& t : sweep.interior_points) {
            points.insert(PointOnGraph::interior(g, e, t));
        }
        for (auto& s : sweep.intervals) locus.intervals.push_back(std::move(s));
        for (auto& s : sweep.undecided) locus.undecided.push_back(std::move(s));
    }
    // Drop isolated points swallowed by interval components.
    for (const auto& p : points) {
        bool inside = false;
        for (const auto& s : locus.intervals) {
            if (p.is_vertex()) {
                const auto& edge = g.edge(s.edge);
                if ((s.lo == 0 && edge.u == p.vertex_index()) ||
                    (s.hi == edge.length && edge.v == p.vertex_index())) {
                    inside = true;
                    break;
                }
            } else if (p.edge_index() == s.edge && p.offset() >= s.lo && p.offset() <= s.hi) {
                inside = true;
                break;
            }
        }
        if (!inside) locus.points.push_back(p);
    }
    locus.generic = locus.intervals.empty() && locus.undecided.empty();
    return locus;
}

std::vector<PointOnGraph> mesh_oracle(const MetricGraph& g, const Divisor& d, int resolution) {
    if (resolution < 1) throw Error("resolution must be positive");
    int r = rank(g, d);
    std::vector<PointOnGraph> hits;
    if (r < 0) return hits;
    SweepEngine engine(g, d, r, SweepOptions{});
    std::set<PointOnGraph> seen;
    for (int e = 0; e < g.edge_count(); ++e) {
        for (int k = 0; k <= resolution; ++k) {
            Rational off = g.edge(e).length * frac(k, resolution);
            PointOnGraph p = PointOnGraph::interior(g, e, off);
            if (!seen.insert(p).second) continue;
            if (engine.is_w(p)) hits.push_back(p);
        }
    }
    std::sort(hits.begin(), hits.end());
    return hits;
}

long count_on_closed_edge(const WeierstrassLocus& locus, const MetricGraph& g, int edge) {
    long count = 0;
    const auto& e = g.edge(edge);
    for (const auto& p : locus.points) {
        if (p.is_vertex()) {
            if (p.vertex_index() == e.u || p.vertex_index() == e.v) ++count;
        } else if (p.edge_index() == edge) {
            ++count;
        }
    }
    return count;
}

}  // namespace tropweier
