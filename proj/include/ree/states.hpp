#pragma once

#include <cstdint>
#include <vector>

#include "ree/bipartite.hpp"
#include "ree/complex_matrix.hpp"

namespace ree {

/// Hermitian, positive-semidefinite, unit-trace operator on a bipartite
/// space. Validated factories enforce the invariants (Hermitian within 1e-8,
/// min eigenvalue >= -1e-8, trace 1 within 1e-8).
class DensityMatrix {
public:
    DensityMatrix() = default;

    /// Full validation, then cleanup (exact hermitization + trace
    /// normalization). Throws DimensionMismatch / NonHermitian / Error.
    static DensityMatrix from_matrix(ComplexMatrix m, Dims dims);

    /// No validation; for construction paths that satisfy the invariants
    /// by construction.
    static DensityMatrix unchecked(ComplexMatrix m, Dims dims);

    const ComplexMatrix& matrix() const { return matrix_; }
    Dims dims() const { return dims_; }
    int dim() const { return matrix_.dim(); }

private:
    DensityMatrix(ComplexMatrix m, Dims dims) : matrix_(std::move(m)), dims_(dims) {}

    ComplexMatrix matrix_;
    Dims dims_;
};

/// Separable-state parameterization: a list of unnormalized product-vector
/// pairs. The represented state is the trace-normalized sum of the product
/// projectors |phi1><phi1| (x) |phi2><phi2|.
struct ProductEnsemble {
    struct Term {
        Vec phi1;
        Vec phi2;
    };

    Dims dims;
    std::vector<Term> terms;

    std::size_t size() const { return terms.size(); }
};

/// Werner-family parameter: local dimension and flip expectation f in [-1,1].
struct WernerParameter {
    int d;
    double f;
};

/// Trace-normalized state induced by the ensemble.
/// Throws ZeroEnsemble when the total trace is < 1e-14.
DensityMatrix ensemble_to_state(const ProductEnsemble& e);

/// K product terms with i.i.d. standard complex Gaussian components,
/// deterministic per seed. The induced state is checked to be full rank
/// (min eigenvalue > 1e-9) and redrawn up to 10 times otherwise.
ProductEnsemble random_product_ensemble(Dims dims, int k, std::uint64_t seed);

/// Swap operator on d (x) d: F |i>|j> = |j>|i>.
ComplexMatrix flip_operator(int d);

/// Werner state on d (x) d with Tr(rho F) = f.
DensityMatrix werner_state(WernerParameter p);

/// Separable by construction (random product ensemble, normalized).
DensityMatrix random_separable(Dims dims, std::uint64_t seed);

/// Rejection-samples full-rank states (G G' / Tr) until the partial
/// transpose has an eigenvalue < -1e-6. Throws SamplingExhausted after
/// 10^4 rejections.
DensityMatrix random_npt(Dims dims, std::uint64_t seed);

/// Haar-ish random pure state (normalized Gaussian vector projector).
DensityMatrix random_pure(Dims dims, std::uint64_t seed);

/// Normalized vector with i.i.d. standard complex Gaussian components.
Vec random_unit_vector(int n, std::uint64_t seed);

/// True iff the minimum eigenvalue of the partial transpose is >= -tol.
bool is_ppt(const DensityMatrix& sigma, double tol = 1e-9);

/// Deterministic sub-stream derivation for seeds (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ree
