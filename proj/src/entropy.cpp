#include "ree/entropy.hpp"

#include <cmath>
#include <limits>

#include "ree/eig.hpp"
#include "ree/kernels.hpp"

namespace ree {

namespace {

constexpr double kKernelWeightTol = 1e-10;

double clamp_tiny_negative(double x) {
    return (x < 0.0 && x > -1e-10) ? 0.0 : x;
}

}  // namespace

double quantum_relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho) {
    if (sigma.dim() != rho.dim())
        throw DimensionMismatch("relative entropy needs states of equal dimension");
    const int d = sigma.dim();
    const auto& k = kernels::active();

    double tr_sigma_ln_sigma = 0.0;
    for (double lam : hermitian_eigenvalues(sigma.matrix()))
        if (lam > kSupportFloor) tr_sigma_ln_sigma += lam * std::log(lam);

    const HermitianEigensystem es = hermitian_eig(rho.matrix());
    double tr_sigma_ln_rho = 0.0;
    double kernel_weight = 0.0;
    Vec v(d);
    for (int n = 0; n < d; ++n) {
        for (int i = 0; i < d; ++i) v[i] = es.eigenvectors(i, n);
        const Vec sv = mat_vec(sigma.matrix(), v);
        const double w = std::max(0.0, k.dotc(v.size(), v.data(), sv.data()).real());
        if (es.eigenvalues[n] > kSupportFloor)
            tr_sigma_ln_rho += w * std::log(es.eigenvalues[n]);
        else
            kernel_weight += w;
    }
    if (kernel_weight > kKernelWeightTol) return std::numeric_limits<double>::infinity();
    return clamp_tiny_negative(tr_sigma_ln_sigma - tr_sigma_ln_rho);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double lam : hermitian_eigenvalues(rho.matrix()))
        if (lam > kSupportFloor) s -= lam * std::log(lam);
    return clamp_tiny_negative(s);
}

}  // namespace ree
