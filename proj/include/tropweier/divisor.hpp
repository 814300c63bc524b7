#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tropweier/graph.hpp"
#include "tropweier/plfunction.hpp"
#include "tropweier/rational.hpp"

namespace tropweier {

// Finite integer-weighted formal sum of points; keys are canonical points
// and zero coefficients are never stored.
class Divisor {
public:
    Divisor() = default;
    static Divisor single(const PointOnGraph& p, long coeff = 1);

    long coeff(const PointOnGraph& p) const;
    void add(const PointOnGraph& p, long c);

    Divisor& operator+=(const Divisor& o);
    Divisor& operator-=(const Divisor& o);
    friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
    friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
    Divisor operator*(long k) const;
    Divisor operator-() const { return *this * -1; }
    bool operator==(const Divisor& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Divisor& o) const { return !(*this == o); }

    long degree() const;
    bool is_effective() const;
    bool is_effective_away_from(const PointOnGraph& q) const;
    bool empty() const { return coeffs_.empty(); }
    const std::map<PointOnGraph, long>& coeffs() const { return coeffs_; }

    Divisor positive_part() const;
    Divisor negative_part() const;  // effective: the negated negative coefficients

    // Chips at interior points of an edge: (offset, coefficient), ascending.
    std::vector<std::pair<Rational, long>> interior_chips(int edge) const;

private:
    std::map<PointOnGraph, long> coeffs_;
};

// Div(f): coefficient at x is the sum of outgoing slopes of f at x; degree is
// always zero and the support is the break locus. Requires integer slopes.
Divisor principal_divisor(const PLFunction& f);

Divisor zeros_of(const PLFunction& f);  // positive part of Div(f)
Divisor poles_of(const PLFunction& f);  // negative part of Div(f), as an effective divisor

// Effective divisor poles(f) + Div(max(f, lambda)), linearly equivalent to
// both zeros(f) and poles(f); equals poles(f) for large lambda and zeros(f)
// for small lambda.
Divisor interpolate_level(const PLFunction& f, const Rational& lambda);

// Sum over ordered pairs of chips of D of the voltage at one chip when a
// unit current is sent from the other to q. Requires D effective;
// nonnegative, and zero iff D is supported at q.
Rational q_energy(const MetricGraph& g, const PointOnGraph& q, const Divisor& d);

// q-reduced representative of [D]: effective away from q, minimizes the
// q-energy. The witness satisfies Div(witness) = divisor - D and
// witness(q) = 0.
struct ReducedDivisor {
    PointOnGraph basepoint;
    Divisor divisor;
    PLFunction witness;
};

struct ReduceOptions {
    long max_phases = 2000000;  // safety cap on burning/firing rounds
};

ReducedDivisor reduce(const MetricGraph& g, const PointOnGraph& q, const Divisor& d,
                      const ReduceOptions& opts = {});

// Same result, but starts the chip movement from a known representative of
// the same class (hint.divisor ~ d with hint.witness); much faster when the
// hint is nearly reduced at q.
ReducedDivisor reduce_with_hint(const MetricGraph& g, const PointOnGraph& q, const Divisor& d,
                                const ReducedDivisor& hint, const ReduceOptions& opts = {});

// True iff [D] contains an effective representative.
bool is_effective_class(const MetricGraph& g, const Divisor& d);

// Baker-Norine rank; -1 for non-effective classes. Uses the degree >= 2g-1
// shortcut, otherwise tests effective divisors supported on the vertex set
// of the midpoint-subdivided model.
int rank(const MetricGraph& g, const Divisor& d);

// Points of the midpoint-subdivided model used by rank().
std::vector<PointOnGraph> rank_determining_set(const MetricGraph& g);

// K = sum (val(x) - 2) x, supported on vertices; degree 2g - 2.
Divisor canonical_divisor(const MetricGraph& g);

// Witness f with Div(f) = d - e when the divisors are linearly equivalent,
// std::nullopt otherwise.
std::optional<PLFunction> linear_equivalence_witness(const MetricGraph& g, const Divisor& d,
                                                     const Divisor& e);

inline bool linearly_equivalent(const MetricGraph& g, const Divisor& d, const Divisor& e) {
    return linear_equivalence_witness(g, d, e).has_value();
}

}  // namespace tropweier
