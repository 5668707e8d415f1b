#include "ree/bipartite.hpp"

#include "ree/kernels.hpp"

namespace ree {

namespace {

void require_bipartite(const ComplexMatrix& m, Dims dims) {
    if (dims.d1 < 1 || dims.d2 < 1) throw DimensionMismatch("local dimensions must be >= 1");
    if (m.dim() != dims.total())
        throw DimensionMismatch("matrix dimension does not equal d1*d2");
}

}  // namespace

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int da = a.dim();
    const int db = b.dim();
    ComplexMatrix out(da * db);
    const auto& k = kernels::active();
    for (int i1 = 0; i1 < da; ++i1) {
        for (int i2 = 0; i2 < db; ++i2) {
            cplx* orow = out.row(i1 * db + i2);
            const cplx* brow = b.row(i2);
            for (int j1 = 0; j1 < da; ++j1) {
                const cplx aij = a(i1, j1);
                if (aij == cplx{0.0, 0.0}) continue;
                k.axpy(static_cast<std::size_t>(db), aij, brow, orow + j1 * db);
            }
        }
    }
    return out;
}

Vec tensor_product_vec(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < a.size(); ++i)
        k.axpy(b.size(), a[i], b.data(), out.data() + i * b.size());
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem keep) {
    require_bipartite(m, dims);
    const int d1 = dims.d1;
    const int d2 = dims.d2;
    if (keep == Subsystem::one) {
        ComplexMatrix out(d1);
        for (int i = 0; i < d1; ++i)
            for (int j = 0; j < d1; ++j) {
                cplx s{0.0, 0.0};
                for (int a = 0; a < d2; ++a) s += m(i * d2 + a, j * d2 + a);
                out(i, j) = s;
            }
        return out;
    }
    ComplexMatrix out(d2);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j) {
            cplx s{0.0, 0.0};
            for (int a = 0; a < d1; ++a) s += m(a * d2 + i, a * d2 + j);
            out(i, j) = s;
        }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Dims dims, Subsystem which) {
    require_bipartite(m, dims);
    const int d1 = dims.d1;
    const int d2 = dims.d2;
    ComplexMatrix out(dims.total());
    for (int i1 = 0; i1 < d1; ++i1)
        for (int i2 = 0; i2 < d2; ++i2)
            for (int j1 = 0; j1 < d1; ++j1)
                for (int j2 = 0; j2 < d2; ++j2) {
                    const cplx v = which == Subsystem::one ? m(j1 * d2 + i2, i1 * d2 + j2)
                                                           : m(i1 * d2 + j2, j1 * d2 + i2);
                    out(i1 * d2 + i2, j1 * d2 + j2) = v;
                }
    return out;
}

ComplexMatrix partial_expectation(const ComplexMatrix& op, Dims dims, const Vec& v,
                                  Subsystem kept) {
    require_bipartite(op, dims);
    const int d1 = dims.d1;
    const int d2 = dims.d2;
    const std::size_t d = static_cast<std::size_t>(dims.total());
    const auto& k = kernels::active();

    std::vector<cplx> srow(d);

    if (kept == Subsystem::one) {
        if (static_cast<int>(v.size()) != d2)
            throw DimensionMismatch("partial_expectation: vector must live on subsystem 2");
        ComplexMatrix out(d1);
        for (int i = 0; i < d1; ++i) {
            // srow = sum_a conj(v[a]) * op((i,a), :)
            std::fill(srow.begin(), srow.end(), cplx{0.0, 0.0});
            for (int a = 0; a < d2; ++a)
                k.axpy(d, std::conj(v[a]), op.row(i * d2 + a), srow.data());
            // out(i,j) = srow[j*d2 : (j+1)*d2] . v
            for (int j = 0; j < d1; ++j)
                out(i, j) = k.dotu(static_cast<std::size_t>(d2), srow.data() + j * d2, v.data());
        }
        return out;
    }

    if (static_cast<int>(v.size()) != d1)
        throw DimensionMismatch("partial_expectation: vector must live on subsystem 1");
    ComplexMatrix out(d2);
    for (int i = 0; i < d2; ++i) {
        // srow = sum_a conj(v[a]) * op((a,i), :)
        std::fill(srow.begin(), srow.end(), cplx{0.0, 0.0});
        for (int a = 0; a < d1; ++a)
            k.axpy(d, std::conj(v[a]), op.row(a * d2 + i), srow.data());
        // out(i,j) = sum_b v[b] * srow[b*d2 + j]
        for (int b = 0; b < d1; ++b)
            k.axpy(static_cast<std::size_t>(d2), v[b], srow.data() + b * d2, out.row(i));
    }
    return out;
}

}  // namespace ree
