#pragma once

#include <cstdint>

#include "ree/core.hpp"

namespace ree {

/// Entanglement witness W = 1 - A built from a converged run: Tr(W rho) >= 0
/// for every separable rho, Tr(W sigma) < 0 for the entangled input.
struct WitnessOperator {
    ComplexMatrix matrix;
    Dims dims;
    double source_entanglement = 0.0;
    /// False when the source run was judged separable; such a witness is
    /// diagnostic only.
    bool certifying = false;
};

WitnessOperator witness_from_result(const REEResult& res);

/// Tr(W rho) for a state on the witness's space.
double witness_expectation(const WitnessOperator& w, const DensityMatrix& rho);

struct SeparableCheckReport {
    double min_expectation = 0.0;
    int samples = 0;       // random separable states tested
    int basis_states = 0;  // computational product states tested
    bool pass = false;     // min_expectation >= -1e-6
};

/// Samples n random separable states plus all computational-basis product
/// states and reports the smallest witness expectation.
SeparableCheckReport verify_on_separables(const WitnessOperator& w, int n_samples,
                                          std::uint64_t seed);

struct ProductMinimum {
    double value = 0.0;
    Vec a;  // unit vector on subsystem 1
    Vec b;  // unit vector on subsystem 2
};

/// Heuristic minimization of <a,b|W|a,b> over unit product vectors by
/// alternating exact eigenvector updates, best over `restarts` random
/// starting points. A value >= -1e-6 (heuristically) certifies the witness
/// inequality on separable states.
ProductMinimum min_product_expectation(const WitnessOperator& w, int restarts,
                                       std::uint64_t seed);

}  // namespace ree
