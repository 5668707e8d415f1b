#pragma once

#include <vector>

#include "ree/complex_matrix.hpp"

namespace ree {

/// Spectral decomposition of a Hermitian matrix: H = V diag(lambda) V'.
/// Eigenvalues sorted ascending, eigenvectors are the orthonormal columns
/// of `eigenvectors` in matching order.
struct HermitianEigensystem {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
///
/// `warm_start` may pass an approximate eigenbasis (e.g. from a nearby
/// matrix); the solver then works on V0' H V0, which is nearly diagonal and
/// converges in one or two sweeps.
///
/// Throws NonHermitian when max|H - H'| > 1e-8 and DecompositionFailure if
/// the sweep budget is exhausted.
HermitianEigensystem hermitian_eig(const ComplexMatrix& h,
                                   const ComplexMatrix* warm_start = nullptr);

/// Eigenvalues only (ascending); skips eigenvector accumulation.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

double min_eigenvalue(const ComplexMatrix& h);

}  // namespace ree
