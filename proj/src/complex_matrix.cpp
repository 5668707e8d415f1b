#include "ree/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "ree/kernels.hpp"

namespace ree {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("matrix dimensions differ");
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    ComplexMatrix out = a;
    kernels::active().axpy(static_cast<std::size_t>(a.dim()) * a.dim(), cplx{1.0, 0.0},
                           b.data(), out.data());
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    ComplexMatrix out = a;
    kernels::active().axpy(static_cast<std::size_t>(a.dim()) * a.dim(), cplx{-1.0, 0.0},
                           b.data(), out.data());
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    const auto n = static_cast<std::size_t>(a.dim());
    ComplexMatrix out(a.dim());
    kernels::active().gemm(n, n, n, a.data(), b.data(), out.data());
    return out;
}

ComplexMatrix operator*(cplx alpha, const ComplexMatrix& a) {
    ComplexMatrix out = a;
    kernels::active().scal(static_cast<std::size_t>(a.dim()) * a.dim(), alpha, out.data());
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out(j, i) = a(i, j);
    return out;
}

cplx trace(const ComplexMatrix& a) {
    cplx t{0.0, 0.0};
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

double frobenius_norm(const ComplexMatrix& a) {
    const auto n = static_cast<std::size_t>(a.dim()) * a.dim();
    const cplx s = kernels::active().dotc(n, a.data(), a.data());
    return std::sqrt(std::max(0.0, s.real()));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    double m = 0.0;
    const auto n = static_cast<std::size_t>(a.dim()) * a.dim();
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i; j < a.dim(); ++j)
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

ComplexMatrix hermitize(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        out(i, i) = a(i, i).real();
        for (int j = i + 1; j < a.dim(); ++j) {
            const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return out;
}

Vec mat_vec(const ComplexMatrix& a, const Vec& x) {
    if (static_cast<int>(x.size()) != a.dim())
        throw DimensionMismatch("mat_vec: vector length does not match matrix dimension");
    Vec out(x.size());
    const auto& k = kernels::active();
    for (int i = 0; i < a.dim(); ++i) out[i] = k.dotu(x.size(), a.row(i), x.data());
    return out;
}

double vec_norm_sq(const Vec& x) {
    return kernels::active().dotc(x.size(), x.data(), x.data()).real();
}

cplx vec_dotc(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatch("vec_dotc: length mismatch");
    return kernels::active().dotc(x.size(), x.data(), y.data());
}

Vec normalized(const Vec& x) {
    const double n = std::sqrt(vec_norm_sq(x));
    if (n <= 1e-14) throw ZeroVector("cannot normalize a (numerically) zero vector");
    Vec out = x;
    kernels::active().scal(out.size(), cplx{1.0 / n, 0.0}, out.data());
    return out;
}

}  // namespace ree
