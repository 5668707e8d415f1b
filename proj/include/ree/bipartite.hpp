#pragma once

#include "ree/complex_matrix.hpp"

namespace ree {

/// Local dimensions of a bipartite space. Subsystem 1 is the slow
/// (most-significant) factor of the composite index: i = i1*d2 + i2.
struct Dims {
    int d1 = 0;
    int d2 = 0;

    int total() const { return d1 * d2; }
    bool operator==(const Dims&) const = default;
};

enum class Subsystem { one = 1, two = 2 };

/// Kronecker product; entry ((i1,i2),(j1,j2)) = a(i1,j1) * b(i2,j2).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product of vectors: out[i1*|b| + i2] = a[i1]*b[i2].
Vec tensor_product_vec(const Vec& a, const Vec& b);

/// Reduced operator on the kept subsystem; preserves the trace.
ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem keep);

/// Transpose on one subsystem only; involutive.
ComplexMatrix partial_transpose(const ComplexMatrix& m, Dims dims, Subsystem which);

/// Sandwich of a bipartite operator with a fixed vector on the other
/// subsystem: kept = one gives R(i,j) = <i,v|A|j,v>, kept = two gives
/// R(i,j) = <v,i|A|v,j>. The result is Hermitian whenever A is.
ComplexMatrix partial_expectation(const ComplexMatrix& op, Dims dims, const Vec& v,
                                  Subsystem kept);

}  // namespace ree
