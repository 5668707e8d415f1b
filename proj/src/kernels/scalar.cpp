#include "ree/kernels.hpp"

#include <cstring>

// Reference kernels. Plain loops, no explicit vectorization; the AVX2
// variants must agree with these to near machine precision.

namespace ree::kernels {
namespace {

void scal_scalar(std::size_t n, cplx alpha, cplx* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void axpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpyc_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * std::conj(x[i]);
}

cplx dotu_scalar(std::size_t n, const cplx* x, const cplx* y) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

cplx dotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

void rot2_scalar(std::size_t n, double c, cplx u, cplx v, cplx* xp, cplx* xq) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx p = xp[i];
        const cplx q = xq[i];
        xp[i] = c * p + u * q;
        xq[i] = v * p + c * q;
    }
}

void gemm_scalar(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
                 const cplx* b, cplx* c) {
    std::memset(c, 0, m * n * sizeof(cplx));
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const cplx aip = a[i * k + p];
            if (aip == cplx{0.0, 0.0}) continue;
            const cplx* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
        }
    }
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend table{
        "scalar",     scal_scalar, axpy_scalar, axpyc_scalar,
        dotu_scalar,  dotc_scalar, rot2_scalar, gemm_scalar,
    };
    return table;
}

}  // namespace ree::kernels
