#pragma once

#include "ree/states.hpp"

namespace ree {

/// Eigenvalues at or below this floor are treated as exact zeros when a
/// logarithm is evaluated (0*ln 0 = 0 convention).
inline constexpr double kSupportFloor = 1e-12;

/// S(sigma||rho) = Tr(sigma ln sigma - sigma ln rho), in nats.
/// Returns +infinity when sigma's support leaves rho's support (weight on
/// rho's floored kernel above 1e-10). Tiny negative round-off is clamped
/// to 0.
double quantum_relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho);

/// -sum lambda ln lambda over eigenvalues above the support floor, in nats.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace ree
