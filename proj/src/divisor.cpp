#include "tropweier/divisor.hpp"

#include <algorithm>
#include <functional>

#include "tropweier/electrical.hpp"
#include "tropweier/errors.hpp"

namespace tropweier {

Divisor Divisor::single(const PointOnGraph& p, long coeff) {
    Divisor d;
    d.add(p, coeff);
    return d;
}

long Divisor::coeff(const PointOnGraph& p) const {
    auto it = coeffs_.find(p);
    return it == coeffs_.end() ? 0 : it->second;
}

void Divisor::add(const PointOnGraph& p, long c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(p, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

Divisor& Divisor::operator+=(const Divisor& o) {
    for (const auto& [p, c] : o.coeffs_) add(p, c);
    return *this;
}

Divisor& Divisor::operator-=(const Divisor& o) {
    for (const auto& [p, c] : o.coeffs_) add(p, -c);
    return *this;
}

Divisor Divisor::operator*(long k) const {
    Divisor d;
    if (k == 0) return d;
    for (const auto& [p, c] : coeffs_) d.coeffs_[p] = c * k;
    return d;
}

long Divisor::degree() const {
    long deg = 0;
    for (const auto& [p, c] : coeffs_) deg += c;
    return deg;
}

bool Divisor::is_effective() const {
    for (const auto& [p, c] : coeffs_) {
        if (c < 0) return false;
    }
    return true;
}

bool Divisor::is_effective_away_from(const PointOnGraph& q) const {
    for (const auto& [p, c] : coeffs_) {
        if (c < 0 && !(p == q)) return false;
    }
    return true;
}

Divisor Divisor::positive_part() const {
    Divisor d;
    for (const auto& [p, c] : coeffs_) {
        if (c > 0) d.coeffs_[p] = c;
    }
    return d;
}

Divisor Divisor::negative_part() const {
    Divisor d;
    for (const auto& [p, c] : coeffs_) {
        if (c < 0) d.coeffs_[p] = -c;
    }
    return d;
}

std::vector<std::pair<Rational, long>> Divisor::interior_chips(int edge) const {
    std::vector<std::pair<Rational, long>> out;
    for (const auto& [p, c] : coeffs_) {
        if (!p.is_vertex() && p.edge_index() == edge) out.emplace_back(p.offset(), c);
    }
    return out;
}

Divisor principal_divisor(const PLFunction& f) {
    if (!f.integer_slopes()) throw Error("principal divisor requires integer slopes");
    const MetricGraph& g = f.graph();
    Divisor div;
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        const auto& cuts = f.breakpoints(e);
        const auto& slopes = f.slopes(e);
        div.add(PointOnGraph::vertex(edge.u), rational_to_long(slopes.front()));
        div.add(PointOnGraph::vertex(edge.v), -rational_to_long(slopes.back()));
        for (size_t k = 0; k < cuts.size(); ++k) {
            long delta = rational_to_long(slopes[k + 1]) - rational_to_long(slopes[k]);
            div.add(PointOnGraph::interior(g, e, cuts[k]), delta);
        }
    }
    return div;
}

Divisor zeros_of(const PLFunction& f) { return principal_divisor(f).positive_part(); }

Divisor poles_of(const PLFunction& f) { return principal_divisor(f).negative_part(); }

Divisor interpolate_level(const PLFunction& f, const Rational& lambda) {
    return poles_of(f) + principal_divisor(f.clip_below(lambda));
}

Rational q_energy(const MetricGraph& g, const PointOnGraph& q, const Divisor& d) {
    if (!d.is_effective()) throw Error("q-energy requires an effective divisor");
    Rational total = 0;
    for (const auto& [yi, ai] : d.coeffs()) {
        auto j = voltage_function(g, yi, q);
        for (const auto& [yj, aj] : d.coeffs()) {
            total += Rational(ai) * Rational(aj) * j.function.evaluate(yj);
        }
    }
    return total;
}

namespace {

// One burning pass: fire spreads from q along edges; a vertex carrying c
// chips burns once fire has arrived from more than c directions. Returns the
// per-vertex burnt flags and, for unburnt vertices, the number of arrived
// directions (which equals their out-degree towards the burnt region).
struct BurnState {
    std::vector<char> burnt;
    std::vector<int> arrived;
    bool all_burnt = false;
};

BurnState run_burn(const MetricGraph& fine, const std::vector<long>& chips, int q) {
    const int n = fine.vertex_count();
    BurnState st;
    st.burnt.assign(n, 0);
    st.arrived.assign(n, 0);
    st.burnt[q] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        st.arrived.assign(n, 0);
        for (int e = 0; e < fine.edge_count(); ++e) {
            const auto& edge = fine.edge(e);
            if (edge.u == edge.v) continue;
            if (st.burnt[edge.u] && !st.burnt[edge.v]) st.arrived[edge.v] += 1;
            if (st.burnt[edge.v] && !st.burnt[edge.u]) st.arrived[edge.u] += 1;
        }
        for (int v = 0; v < n; ++v) {
            if (!st.burnt[v] && st.arrived[v] > chips[v]) {
                st.burnt[v] = 1;
                changed = true;
            }
        }
    }
    st.all_burnt = std::all_of(st.burnt.begin(), st.burnt.end(), [](char b) { return b != 0; });
    return st;
}

// Dhar loop for a divisor that is effective away from q: repeatedly fire the
// maximal unburnt set by the largest amount before a chip reaches a vertex of
// the refined model. Returns the reduced divisor and the accumulated witness
// (Div(witness) = result - input).
std::pair<Divisor, PLFunction> reduce_effective(const MetricGraph& g, const PointOnGraph& q,
                                                Divisor current, const ReduceOptions& opts) {
    PLFunction witness(g);
    for (long phase = 0; phase < opts.max_phases; ++phase) {
        std::vector<PointOnGraph> pts;
        pts.reserve(current.coeffs().size() + 1);
        for (const auto& [p, c] : current.coeffs()) pts.push_back(p);
        pts.push_back(q);
        RefinementMap ref(g, pts);
        const MetricGraph& fine = ref.refined();

        std::vector<long> chips(fine.vertex_count(), 0);
        for (const auto& [p, c] : current.coeffs()) {
            chips[ref.to_refined(p).vertex_index()] = c;
        }
        int qv = ref.to_refined(q).vertex_index();
        BurnState st = run_burn(fine, chips, qv);
        if (st.all_burnt) {
            return {std::move(current), std::move(witness)};
        }

        // Largest legal firing amount: the shortest edge leaving the unburnt
        // set. Each such edge carries exactly one chip front.
        std::optional<Rational> eps;
        std::vector<char> edge_in_set(fine.edge_count(), 0);
        for (int e = 0; e < fine.edge_count(); ++e) {
            const auto& edge = fine.edge(e);
            bool bu = st.burnt[edge.u];
            bool bv = st.burnt[edge.v];
            if (!bu && !bv) {
                edge_in_set[e] = 1;
            } else if (bu != bv) {
                if (!eps || edge.length < *eps) eps = edge.length;
            }
        }
        if (!eps) throw Error("internal: unburnt set with no outgoing edge");

        std::vector<char> unburnt(fine.vertex_count(), 0);
        for (int v = 0; v < fine.vertex_count(); ++v) unburnt[v] = !st.burnt[v];
        PLFunction dist = PLFunction::distance_function(fine, unburnt, edge_in_set);
        PLFunction step = -(dist.clip_above(*eps));
        PLFunction step_base = PLFunction::pull_back(ref, step);
        current += principal_divisor(step_base);
        witness += step_base;
    }
    throw IterationLimit("burning did not settle within the phase budget");
}

// General reduction: peel negative chips off by Riemann-backed sequential
// subtraction, then run the effective Dhar loop at q. Coefficients at q are
// transparent to reduction, so a temporary stack of k chips at q keeps every
// intermediate divisor effective.
std::pair<Divisor, PLFunction> reduce_any(const MetricGraph& g, const PointOnGraph& q,
                                          const Divisor& d, const ReduceOptions& opts) {
    long hole_at_q = std::max(0L, -d.coeff(q));
    Divisor holes = d.negative_part();
    holes.add(q, -hole_at_q);  // q's own deficit rides along untouched
    Divisor effective = d.positive_part();

    long k = std::max(0L, static_cast<long>(g.genus()) + holes.degree() - effective.degree());
    effective.add(q, k);

    PLFunction witness(g);
    for (const auto& [y, c] : holes.coeffs()) {
        for (long i = 0; i < c; ++i) {
            auto [reduced, w] = reduce_effective(g, y, std::move(effective), opts);
            witness += w;
            if (reduced.coeff(y) < 1) {
                throw Error("internal: sequential subtraction lost a guaranteed chip");
            }
            reduced.add(y, -1);
            effective = std::move(reduced);
        }
    }
    auto [reduced, w] = reduce_effective(g, q, std::move(effective), opts);
    witness += w;
    reduced.add(q, -(k + hole_at_q));
    witness.add_constant(-witness.evaluate(q));
    return {std::move(reduced), std::move(witness)};
}

}  // namespace

ReducedDivisor reduce(const MetricGraph& g, const PointOnGraph& q, const Divisor& d,
                      const ReduceOptions& opts) {
    auto [r, w] = reduce_any(g, q, d, opts);
    return ReducedDivisor{q, std::move(r), std::move(w)};
}

ReducedDivisor reduce_with_hint(const MetricGraph& g, const PointOnGraph& q, const Divisor& d,
                                const ReducedDivisor& hint, const ReduceOptions& opts) {
    auto [r, w] = reduce_any(g, q, hint.divisor, opts);
    PLFunction witness = hint.witness + w;
    witness.add_constant(-witness.evaluate(q));
    (void)d;  // hint.divisor ~ d by contract; witness composes through it
    return ReducedDivisor{q, std::move(r), std::move(witness)};
}

bool is_effective_class(const MetricGraph& g, const Divisor& d) {
    long deg = d.degree();
    if (deg < 0) return false;
    if (d.is_effective()) return true;
    if (deg >= g.genus()) return true;  // Riemann: rank >= deg - g >= 0
    PointOnGraph q0 = PointOnGraph::vertex(0);
    auto r = reduce(g, q0, d);
    return r.divisor.coeff(q0) >= 0;
}

std::vector<PointOnGraph> rank_determining_set(const MetricGraph& g) {
    std::vector<PointOnGraph> set;
    set.reserve(g.vertex_count() + g.edge_count());
    for (int v = 0; v < g.vertex_count(); ++v) set.push_back(PointOnGraph::vertex(v));
    for (int e = 0; e < g.edge_count(); ++e) {
        set.push_back(PointOnGraph::interior(g, e, g.edge(e).length / 2));
    }
    return set;
}

int rank(const MetricGraph& g, const Divisor& d) {
    const long deg = d.degree();
    const long genus = g.genus();
    if (deg < 0) return -1;
    if (deg >= 2 * genus - 1) return static_cast<int>(deg - genus);
    if (!is_effective_class(g, d)) return -1;

    auto set = rank_determining_set(g);
    // Does [d - E] stay effective for every effective E of size `size`
    // supported on the rank-determining set?
    std::function<bool(size_t, long, Divisor&)> covers = [&](size_t start, long remaining,
                                                             Divisor& acc) {
        if (remaining == 0) return is_effective_class(g, d - acc);
        for (size_t i = start; i < set.size(); ++i) {
            acc.add(set[i], 1);
            bool ok = covers(i, remaining - 1, acc);
            acc.add(set[i], -1);
            if (!ok) return false;
        }
        return true;
    };

    int r = 0;
    while (true) {
        Divisor acc;
        if (!covers(0, r + 1, acc)) return r;
        ++r;
        if (r > deg) throw Error("internal: rank exceeded degree");
    }
}

Divisor canonical_divisor(const MetricGraph& g) {
    Divisor k;
    for (int v = 0; v < g.vertex_count(); ++v) {
        long val = static_cast<long>(g.incident(v).size());
        k.add(PointOnGraph::vertex(v), val - 2);
    }
    return k;
}

std::optional<PLFunction> linear_equivalence_witness(const MetricGraph& g, const Divisor& d,
                                                     const Divisor& e) {
    if (d.degree() != e.degree()) return std::nullopt;
    if (d == e) return PLFunction(g);
    PointOnGraph q0 = PointOnGraph::vertex(0);
    auto rd = reduce(g, q0, d);
    auto re = reduce(g, q0, e);
    if (rd.divisor != re.divisor) return std::nullopt;
    PLFunction f = re.witness - rd.witness;  // Div(f) = d - e
    f.add_constant(-f.evaluate(q0));
    return f;
}

}  // namespace tropweier
