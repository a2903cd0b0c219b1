#pragma once

#include <stdexcept>
#include <string>

namespace lseries {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested index range exceeds the stored truncation of a series.
struct TruncationError : Error {
    using Error::Error;
};

/// Division by a series whose leading coefficient vanishes (or is below
/// tolerance in floating mode).
struct DivisionError : Error {
    using Error::Error;
};

/// Evaluation requested at (or too close to) a pole.
struct PoleError : Error {
    using Error::Error;
};

/// A documented remainder bound cannot be met with the allowed parameters.
struct PrecisionError : Error {
    using Error::Error;
};

/// Operation requires a primitive character.
struct PrimitivityError : Error {
    using Error::Error;
};

/// Not enough coefficient data to decide (e.g. truncation < N).
struct InsufficientDataError : Error {
    using Error::Error;
};

/// Contour passes too close to a zero for reliable phase tracking.
struct BoundaryError : Error {
    using Error::Error;
};

/// Root configuration too ill-conditioned for a trustworthy decomposition.
struct IllConditionedError : Error {
    using Error::Error;
};

/// Rational function is not the Laplace transform of a density plus atom.
struct NotLaplaceError : Error {
    using Error::Error;
};

/// Hypotheses of the comparison theorem are not satisfied by the pair.
struct InapplicableError : Error {
    using Error::Error;
};

} // namespace lseries
