#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tropweier {

// Exact rational arithmetic, backed by GMP. mpq_class keeps values in
// lowest terms with positive denominator after canonicalize(), which the
// helpers below always call on construction from text.
using Rational = mpq_class;

// Parses "p/q" or "n" (optional leading '-'). Rejects decimals, zero
// denominators and empty input.
Rational rational_from_string(std::string_view text);

// Lowest-terms serialization: "p/q", or "n" when the denominator is 1.
std::string rational_to_string(const Rational& q);

// The two-argument mpq_class constructor does not reduce; this does.
inline Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

bool is_integer(const Rational& q);

// Requires is_integer(q) and a value that fits in long.
long rational_to_long(const Rational& q);

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace tropweier
