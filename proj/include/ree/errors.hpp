#pragma once

#include <stdexcept>
#include <string>

namespace ree {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input operator failed the Hermiticity pre-check.
struct NonHermitian : Error {
    using Error::Error;
};

/// Eigendecomposition did not converge.
struct DecompositionFailure : Error {
    using Error::Error;
};

/// Operand dimensions are inconsistent.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// Product ensemble has (numerically) zero total trace.
struct ZeroEnsemble : Error {
    using Error::Error;
};

/// Random state generation kept producing rank-deficient draws.
struct DegenerateDraw : Error {
    using Error::Error;
};

/// Rejection sampling hit its attempt budget.
struct SamplingExhausted : Error {
    using Error::Error;
};

/// Reference state has an eigenvalue below the support floor, so the
/// gradient operator is undefined.
struct RankDeficientReference : Error {
    using Error::Error;
};

/// A subsystem vector needed with unit normalization has ~zero norm.
struct ZeroVector : Error {
    using Error::Error;
};

/// Iteration lost full rank repeatedly and ran out of restarts.
struct RankCollapse : Error {
    using Error::Error;
};

/// A file could not be parsed or failed validation.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace ree
