#include "ree/kernels.hpp"

// AVX2+FMA kernels for interleaved complex<double>, two complex numbers per
// 256-bit register. This translation unit is the only one compiled with
// -mavx2 -mfma; when the build target lacks those flags the fallback at the
// bottom reports the backend as unavailable.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cstring>

namespace ree::kernels {
namespace {

// Sign masks to flip either the imaginary (odd) or real (even) lanes.
inline __m256d odd_neg_mask() { return _mm256_set_pd(-0.0, 0.0, -0.0, 0.0); }
inline __m256d even_neg_mask() { return _mm256_set_pd(0.0, -0.0, 0.0, -0.0); }

// (ar + i*ai) * x for two packed complex values.
// xs must hold x with re/im swapped within each complex.
inline __m256d cmul(__m256d x, __m256d xs, __m256d ar, __m256d ai) {
    return _mm256_fmaddsub_pd(x, ar, _mm256_mul_pd(xs, ai));
}

inline __m256d swap_reim(__m256d x) { return _mm256_permute_pd(x, 0x5); }

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_hadd_pd(s, s));
}

// Adds the two packed complex values, returning one complex.
inline cplx creduce(__m256d acc) {
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return {out[0], out[1]};
}

void scal_avx2(std::size_t n, cplx alpha, cplx* x) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    double* xd = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(xd + 2 * i);
        _mm256_storeu_pd(xd + 2 * i, cmul(v, swap_reim(v), ar, ai));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

void axpy_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        yv = _mm256_add_pd(yv, cmul(xv, swap_reim(xv), ar, ai));
        _mm256_storeu_pd(yd + 2 * i, yv);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpyc_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    // alpha*conj(x) = conj(conj(alpha)*x): multiply by conj(alpha), then
    // flip the sign of the imaginary lanes.
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d nai = _mm256_set1_pd(-alpha.imag());
    const __m256d flip = odd_neg_mask();
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        __m256d p = cmul(xv, swap_reim(xv), ar, nai);
        yv = _mm256_add_pd(yv, _mm256_xor_pd(p, flip));
        _mm256_storeu_pd(yd + 2 * i, yv);
    }
    for (; i < n; ++i) y[i] += alpha * std::conj(x[i]);
}

cplx dotu_avx2(std::size_t n, const cplx* x, const cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        __m256d yre = _mm256_movedup_pd(yv);
        __m256d yim = _mm256_permute_pd(yv, 0xF);
        acc = _mm256_add_pd(acc, cmul(xv, swap_reim(xv), yre, yim));
    }
    cplx out = creduce(acc);
    for (; i < n; ++i) out += x[i] * y[i];
    return out;
}

cplx dotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
    // Re = sum(xr*yr + xi*yi) is a plain dot product of the raw lanes;
    // Im = sum(xr*yi - xi*yr) uses the swapped x with even lanes negated.
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    const __m256d flip = even_neg_mask();
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        acc_im = _mm256_fmadd_pd(_mm256_xor_pd(swap_reim(xv), flip), yv, acc_im);
    }
    cplx out{hsum(acc_re), hsum(acc_im)};
    for (; i < n; ++i) out += std::conj(x[i]) * y[i];
    return out;
}

void rot2_avx2(std::size_t n, double c, cplx u, cplx v, cplx* xp, cplx* xq) {
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d ur = _mm256_set1_pd(u.real());
    const __m256d ui = _mm256_set1_pd(u.imag());
    const __m256d vr = _mm256_set1_pd(v.real());
    const __m256d vi = _mm256_set1_pd(v.imag());
    double* pd = reinterpret_cast<double*>(xp);
    double* qd = reinterpret_cast<double*>(xq);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d p = _mm256_loadu_pd(pd + 2 * i);
        __m256d q = _mm256_loadu_pd(qd + 2 * i);
        __m256d np = _mm256_fmadd_pd(p, cv, cmul(q, swap_reim(q), ur, ui));
        __m256d nq = _mm256_fmadd_pd(q, cv, cmul(p, swap_reim(p), vr, vi));
        _mm256_storeu_pd(pd + 2 * i, np);
        _mm256_storeu_pd(qd + 2 * i, nq);
    }
    for (; i < n; ++i) {
        const cplx p = xp[i];
        const cplx q = xq[i];
        xp[i] = c * p + u * q;
        xq[i] = v * p + c * q;
    }
}

void gemm_avx2(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
               const cplx* b, cplx* c) {
    std::memset(c, 0, m * n * sizeof(cplx));
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        double* cd = reinterpret_cast<double*>(crow);
        for (std::size_t p = 0; p < k; ++p) {
            const cplx aip = a[i * k + p];
            if (aip == cplx{0.0, 0.0}) continue;
            const cplx* brow = b + p * n;
            const double* bd = reinterpret_cast<const double*>(brow);
            const __m256d ar = _mm256_set1_pd(aip.real());
            const __m256d ai = _mm256_set1_pd(aip.imag());
            std::size_t j = 0;
            for (; j + 2 <= n; j += 2) {
                __m256d bv = _mm256_loadu_pd(bd + 2 * j);
                __m256d cv = _mm256_loadu_pd(cd + 2 * j);
                cv = _mm256_add_pd(cv, cmul(bv, swap_reim(bv), ar, ai));
                _mm256_storeu_pd(cd + 2 * j, cv);
            }
            for (; j < n; ++j) crow[j] += aip * brow[j];
        }
    }
}

const Backend kAvx2{
    "avx2",     scal_avx2, axpy_avx2, axpyc_avx2,
    dotu_avx2,  dotc_avx2, rot2_avx2, gemm_avx2,
};

}  // namespace

const Backend* avx2_backend() {
    const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? &kAvx2 : nullptr;
}

}  // namespace ree::kernels

#else  // !(__AVX2__ && __FMA__)

namespace ree::kernels {

const Backend* avx2_backend() { return nullptr; }

}  // namespace ree::kernels

#endif
