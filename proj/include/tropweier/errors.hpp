#pragma once

#include <stdexcept>
#include <string>

namespace tropweier {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text could not be parsed (rationals, points, files).
struct ParseError : Error {
    using Error::Error;
};

// Graph validation failures.
struct DisconnectedGraph : Error {
    using Error::Error;
};
struct NonpositiveLength : Error {
    using Error::Error;
};
struct DanglingEndpoint : Error {
    using Error::Error;
};

// External current vector does not sum to zero.
struct CurrentNotConserved : Error {
    using Error::Error;
};

// Sampled resistance values on a segment are not an exact quadratic;
// signals a breakpoint inside the segment.
struct NotQuadratic : Error {
    using Error::Error;
};

// Divisor rank differs from deg - g, so the generic sweep contract is void.
struct NonGenericRank : Error {
    using Error::Error;
};

// Weierstrass locus has interval components; point-sum operations refuse it.
struct NonGenericLocus : Error {
    using Error::Error;
};

// Random divisor sampling kept hitting non-generic configurations.
struct GenericityRetriesExceeded : Error {
    using Error::Error;
};

// Internal iteration guard tripped (burning or sweep refinement cap).
struct IterationLimit : Error {
    using Error::Error;
};

}  // namespace tropweier
