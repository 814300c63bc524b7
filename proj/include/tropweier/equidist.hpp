#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tropweier/electrical.hpp"
#include "tropweier/rng.hpp"
#include "tropweier/weierstrass.hpp"

namespace tropweier {

struct ExperimentConfig {
    std::vector<long> degrees;  // ascending, each >= genus
    std::uint64_t seed = 0;
    long denominator_bound = 1000;  // offsets drawn as k / bound, reduced
    int retry_budget = 16;
    SweepOptions sweep;
};

struct ReportRow {
    long degree;
    int edge;
    long count;      // locus points on the closed segment
    Rational mu;     // canonical mass of the segment
    Rational lower;  // N mu(e) - 3g - 1
    Rational upper;  // N mu(e) + g + 2
    bool bound_ok;
    Rational delta;      // count / N
    Rational deviation;  // |count - N mu(e)|
};

struct ExperimentSummary {
    Rational max_deviation = 0;   // empirical constant in the O(1/N) rate
    bool all_bounds_hold = true;
    bool existence_holds = true;  // segments with mu(e) > (3g+1)/N are hit
};

struct ExperimentResult {
    std::vector<ReportRow> rows;
    ExperimentSummary summary;
    MeasureTable measure;
};

// N chips at independently drawn points: edge weighted by length, offset a
// reduced fraction k/denominator_bound of the edge length. Redraws when the
// rank is not N - g or the locus is not finite; deterministic in
// (graph, degree, seed). Throws GenericityRetriesExceeded after the budget.
Divisor sample_generic_divisor(const MetricGraph& g, long degree, std::uint64_t seed,
                               long denominator_bound = 1000, int retry_budget = 16,
                               const SweepOptions& sweep = {});

ExperimentResult run_experiment(const MetricGraph& g, const ExperimentConfig& cfg);

// Pair of exact integrals: the normalized locus sum (1/N) sum f(x) and the
// measure integral sum_e density_e int_e f. Throws NonGenericLocus when the
// locus is not a finite point set.
std::pair<Rational, Rational> integrate_against(const MetricGraph& g, const PLFunction& f,
                                                const WeierstrassLocus& w, const MeasureTable& mu);

}  // namespace tropweier
