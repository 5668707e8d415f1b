#pragma once

#include <complex>
#include <vector>

#include "ree/errors.hpp"

namespace ree {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

/// Dense square complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), data_(check_dim(dim) * dim) {}

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }
    bool empty() const { return dim_ == 0; }

    cplx& operator()(int row, int col) { return data_[static_cast<std::size_t>(row) * dim_ + col]; }
    const cplx& operator()(int row, int col) const {
        return data_[static_cast<std::size_t>(row) * dim_ + col];
    }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    cplx* row(int r) { return data_.data() + static_cast<std::size_t>(r) * dim_; }
    const cplx* row(int r) const { return data_.data() + static_cast<std::size_t>(r) * dim_; }

private:
    static std::size_t check_dim(int dim) {
        if (dim < 1) throw DimensionMismatch("matrix dimension must be >= 1");
        return static_cast<std::size_t>(dim);
    }

    int dim_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);  // matrix product
ComplexMatrix operator*(cplx alpha, const ComplexMatrix& a);

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);

cplx trace(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
/// max_{ij} |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max_{ij} |a_ij - conj(a_ji)|
double hermiticity_defect(const ComplexMatrix& a);
/// (a + a')/2, exactly Hermitian output
ComplexMatrix hermitize(const ComplexMatrix& a);

Vec mat_vec(const ComplexMatrix& a, const Vec& x);

double vec_norm_sq(const Vec& x);
cplx vec_dotc(const Vec& x, const Vec& y);
Vec normalized(const Vec& x);  // throws ZeroVector below 1e-14 norm

}  // namespace ree
