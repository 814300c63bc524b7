#include "tropweier/equidist.hpp"

#include "tropweier/errors.hpp"

namespace tropweier {

namespace {

PointOnGraph draw_point(const MetricGraph& g, SplitMix64& rng, long denominator_bound) {
    // Edge chosen with probability proportional to length: compare the
    // cumulative lengths against a uniform draw scaled to the total.
    static const mpz_class kTwo64 = mpz_class(1) << 64;
    Rational u(mpz_class(rng.next()), kTwo64);
    u.canonicalize();
    Rational target = u * g.total_length();
    Rational cum = 0;
    int e = g.edge_count() - 1;
    for (int i = 0; i < g.edge_count(); ++i) {
        cum += g.edge(i).length;
        if (target < cum) {
            e = i;
            break;
        }
    }
    long k = 1 + static_cast<long>(rng.below(denominator_bound - 1));
    Rational offset = g.edge(e).length * frac(k, denominator_bound);
    return PointOnGraph::interior(g, e, offset);
}

struct SampleWithLocus {
    Divisor divisor;
    WeierstrassLocus locus;
};

SampleWithLocus sample_with_locus(const MetricGraph& g, long degree, std::uint64_t seed,
                                  long denominator_bound, int retry_budget,
                                  const SweepOptions& sweep) {
    if (degree < 1) throw Error("degree must be positive");
    if (denominator_bound < 2) throw Error("denominator bound must be at least 2");
    SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(degree)));
    const int genus = g.genus();
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        Divisor d;
        for (long i = 0; i < degree; ++i) d.add(draw_point(g, rng, denominator_bound), 1);
        auto locus = weierstrass_locus(g, d, sweep);
        if (degree >= genus && locus.rank != degree - genus) continue;
        if (!locus.generic) continue;
        return SampleWithLocus{std::move(d), std::move(locus)};
    }
    throw GenericityRetriesExceeded("no generic divisor of degree " + std::to_string(degree) +
                                    " within " + std::to_string(retry_budget) + " draws");
}

}  // namespace

Divisor sample_generic_divisor(const MetricGraph& g, long degree, std::uint64_t seed,
                               long denominator_bound, int retry_budget,
                               const SweepOptions& sweep) {
    return sample_with_locus(g, degree, seed, denominator_bound, retry_budget, sweep).divisor;
}

ExperimentResult run_experiment(const MetricGraph& g, const ExperimentConfig& cfg) {
    ExperimentResult result;
    result.measure = canonical_measure(g);
    const long genus = g.genus();
    for (long n : cfg.degrees) {
        if (n < genus) throw Error("experiment degrees must be at least the genus");
        auto sample = sample_with_locus(g, n, cfg.seed, cfg.denominator_bound, cfg.retry_budget,
                                        cfg.sweep);
        for (int e = 0; e < g.edge_count(); ++e) {
            ReportRow row;
            row.degree = n;
            row.edge = e;
            row.count = count_on_closed_edge(sample.locus, g, e);
            row.mu = result.measure.mass(e);
            row.lower = Rational(n) * row.mu - 3 * genus - 1;
            row.upper = Rational(n) * row.mu + genus + 2;
            row.bound_ok = row.lower <= row.count && Rational(row.count) <= row.upper;
            row.delta = frac(row.count, n);
            row.deviation = rational_abs(Rational(row.count) - Rational(n) * row.mu);
            result.summary.all_bounds_hold &= row.bound_ok;
            result.summary.max_deviation = std::max(result.summary.max_deviation, row.deviation);
            if (row.mu * n > 3 * genus + 1 && row.count < 1) {
                result.summary.existence_holds = false;
            }
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

std::pair<Rational, Rational> integrate_against(const MetricGraph& g, const PLFunction& f,
                                                const WeierstrassLocus& w, const MeasureTable& mu) {
    if (!w.generic) {
        throw NonGenericLocus("locus has interval components; point sums are undefined");
    }
    Rational locus_sum = 0;
    for (const auto& p : w.points) locus_sum += f.evaluate(p);
    if (w.degree > 0) locus_sum /= w.degree;

    Rational integral = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
        const Rational& density = mu.density(e);
        if (density == 0) continue;
        // trapezoid rule is exact on each linear piece
        const auto& cuts = f.breakpoints(e);
        Rational prev = 0;
        Rational prev_value = f.value_at_vertex(g.edge(e).u);
        Rational edge_integral = 0;
        for (size_t k = 0; k <= cuts.size(); ++k) {
            Rational end = k < cuts.size() ? cuts[k] : g.edge(e).length;
            Rational end_value = prev_value + f.slopes(e)[k] * (end - prev);
            edge_integral += (prev_value + end_value) * (end - prev) / 2;
            prev = std::move(end);
            prev_value = std::move(end_value);
        }
        integral += density * edge_integral;
    }
    return {locus_sum, integral};
}

}  // namespace tropweier
