#pragma once

#include <complex>
#include <cstddef>

namespace ree::kernels {

using cplx = std::complex<double>;

/// Table of the data-parallel inner loops everything else is built on.
/// All pointers operate on interleaved (re,im) double-precision arrays.
/// Two implementations exist: a portable scalar reference and an AVX2+FMA
/// variant; they are equivalence-tested against each other.
struct Backend {
    const char* name;

    /// x[i] *= alpha
    void (*scal)(std::size_t n, cplx alpha, cplx* x);
    /// y[i] += alpha * x[i]
    void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
    /// y[i] += alpha * conj(x[i])
    void (*axpyc)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
    /// sum_i x[i] * y[i]
    cplx (*dotu)(std::size_t n, const cplx* x, const cplx* y);
    /// sum_i conj(x[i]) * y[i]
    cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
    /// Simultaneous pair rotation with real diagonal element c:
    ///   xp[i] <- c*xp[i] + u*xq[i]
    ///   xq[i] <- v*xp[i] + c*xq[i]
    void (*rot2)(std::size_t n, double c, cplx u, cplx v, cplx* xp, cplx* xq);
    /// c = a*b for row-major dense complex matrices, a: m x k, b: k x n.
    /// c is overwritten.
    void (*gemm)(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
                 const cplx* b, cplx* c);
};

/// Portable reference implementation. Always available.
const Backend& scalar_backend();

/// AVX2+FMA implementation, or nullptr when the build target or the CPU
/// does not support it.
const Backend* avx2_backend();

/// Backend the library routes through. Chosen once at startup: AVX2 when
/// the CPU supports it, otherwise scalar. The environment variable
/// REE_KERNELS=scalar|avx2|auto overrides the choice (auto = default).
const Backend& active();

}  // namespace ree::kernels
