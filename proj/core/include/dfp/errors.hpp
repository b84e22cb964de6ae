#pragma once

#include <stdexcept>
#include <string>

namespace dfp {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A stated precondition of an operation was violated by the caller.
struct InvalidInput : Error {
    using Error::Error;
};

/// Document whose association matrix is identically zero (a single
/// non-empty collocation pair set makes the relative frequency 1 and
/// its log-weight 0).
struct DegenerateDocument : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct EmptyMatrix : Error {
    using Error::Error;
};

/// No token of the document is a node of the domain graph.
struct NoSupport : Error {
    using Error::Error;
};

struct EmptySet : Error {
    using Error::Error;
};

struct UnknownNode : Error {
    using Error::Error;
};

/// A boosting denominator component is not strictly positive, i.e. the
/// caller passed something other than global PageRank vectors.
struct ZeroDenominator : Error {
    using Error::Error;
};

/// The candidate budget was exhausted before the terminals became
/// weakly connected.
struct NoPathway : Error {
    using Error::Error;
};

struct BadDimension : Error {
    using Error::Error;
};

struct MissingLabels : Error {
    using Error::Error;
};

struct TooFewRows : Error {
    using Error::Error;
};

/// Rank statistics are undefined (e.g. a constant vector).
struct DegenerateInput : Error {
    using Error::Error;
};

/// Malformed input file; the message carries the line number.
struct ParseError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace dfp
