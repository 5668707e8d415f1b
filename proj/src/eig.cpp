#include "ree/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ree/kernels.hpp"

namespace ree {

namespace {

constexpr double kHermTol = 1e-8;
constexpr double kOffTol = 1e-14;  // relative off-diagonal norm at convergence
constexpr int kMaxSweeps = 60;

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
}

// One cyclic Jacobi pass. Rotations are chosen to annihilate a(p,q); the
// 2x2 block is updated in closed form while rows run through the rot2
// kernel, and columns are restored from Hermitian symmetry.
void jacobi_sweep(ComplexMatrix& a, ComplexMatrix* w, double skip_threshold) {
    const int n = a.dim();
    const auto& k = kernels::active();
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const cplx beta = a(p, q);
            const double ab = std::abs(beta);
            if (ab <= skip_threshold) continue;

            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            const cplx phase = beta / ab;
            const double tau = (aqq - app) / (2.0 * ab);
            const double t =
                (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double sg = t * c;
            const cplx s = sg * phase;

            // rows p,q of J'A (contiguous)
            k.rot2(static_cast<std::size_t>(n), c, -s, std::conj(s), a.row(p), a.row(q));

            // closed-form 2x2 block of J'AJ
            a(p, p) = c * c * app - 2.0 * sg * c * ab + sg * sg * aqq;
            a(q, q) = sg * sg * app + 2.0 * sg * c * ab + c * c * aqq;
            a(p, q) = 0.0;
            a(q, p) = 0.0;

            // columns p,q from Hermitian symmetry
            for (int i = 0; i < n; ++i) {
                if (i == p || i == q) continue;
                a(i, p) = std::conj(a(p, i));
                a(i, q) = std::conj(a(q, i));
            }

            // accumulate W = J^T W (W holds V^T, so eigvec n is row n)
            if (w != nullptr)
                k.rot2(static_cast<std::size_t>(n), c, -std::conj(s), s, w->row(p),
                       w->row(q));
        }
    }
}

struct JacobiResult {
    std::vector<double> eigenvalues;  // ascending
    std::vector<int> order;           // order[k] = original index of k-th eigenvalue
};

// Runs Jacobi on `a` in place; on return a is (numerically) diagonal.
JacobiResult run_jacobi(ComplexMatrix& a, ComplexMatrix* w) {
    const int n = a.dim();
    const double fro = frobenius_norm(a);
    if (fro > 0.0) {
        const double off_target = kOffTol * fro;
        const double skip = off_target / (4.0 * n);
        bool converged = false;
        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            if (off_diagonal_norm(a) <= off_target) {
                converged = true;
                break;
            }
            jacobi_sweep(a, w, skip);
        }
        if (!converged && off_diagonal_norm(a) > off_target)
            throw DecompositionFailure("Jacobi eigensolver did not converge");
    }

    JacobiResult res;
    res.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) res.eigenvalues[i] = a(i, i).real();
    res.order.resize(n);
    std::iota(res.order.begin(), res.order.end(), 0);
    std::stable_sort(res.order.begin(), res.order.end(), [&](int x, int y) {
        return res.eigenvalues[x] < res.eigenvalues[y];
    });
    std::sort(res.eigenvalues.begin(), res.eigenvalues.end());
    return res;
}

ComplexMatrix prepare_working_matrix(const ComplexMatrix& h, const ComplexMatrix* warm) {
    if (hermiticity_defect(h) > kHermTol)
        throw NonHermitian("matrix is not Hermitian within 1e-8");
    if (warm == nullptr) return hermitize(h);
    if (warm->dim() != h.dim())
        throw DimensionMismatch("warm-start basis dimension mismatch");
    return hermitize(adjoint(*warm) * h * *warm);
}

}  // namespace

HermitianEigensystem hermitian_eig(const ComplexMatrix& h, const ComplexMatrix* warm_start) {
    const int n = h.dim();
    ComplexMatrix a = prepare_working_matrix(h, warm_start);
    // W holds V^T so that the rotation updates touch contiguous rows.
    ComplexMatrix w = warm_start != nullptr ? transpose(*warm_start)
                                            : ComplexMatrix::identity(n);
    JacobiResult jr = run_jacobi(a, &w);

    HermitianEigensystem out;
    out.eigenvalues = std::move(jr.eigenvalues);
    out.eigenvectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        const int src = jr.order[k];
        for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = w(src, i);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    ComplexMatrix a = prepare_working_matrix(h, nullptr);
    return run_jacobi(a, nullptr).eigenvalues;
}

double min_eigenvalue(const ComplexMatrix& h) {
    return hermitian_eigenvalues(h).front();
}

}  // namespace ree
