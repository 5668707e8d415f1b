#include "ree/states.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ree/eig.hpp"
#include "ree/kernels.hpp"

namespace ree {

namespace {

constexpr double kHermTol = 1e-8;
constexpr double kTraceTol = 1e-8;
constexpr double kPsdTol = 1e-8;

// Portable complex Gaussian source: mt19937_64 + Box-Muller, so that equal
// seeds reproduce across standard libraries.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;          // [0,1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    cplx next_complex() {
        const double re = next();
        const double im = next();
        return {re, im};
    }

    Vec vector(int n) {
        Vec v(n);
        for (auto& x : v) x = next_complex();
        return v;
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

ProductEnsemble draw_ensemble(Dims dims, int k, GaussianStream& g) {
    ProductEnsemble e;
    e.dims = dims;
    e.terms.reserve(k);
    for (int i = 0; i < k; ++i)
        e.terms.push_back({g.vector(dims.d1), g.vector(dims.d2)});
    return e;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over seed advanced by the stream index
    std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, Dims dims) {
    if (dims.d1 < 1 || dims.d2 < 1) throw DimensionMismatch("local dimensions must be >= 1");
    if (m.dim() != dims.total())
        throw DimensionMismatch("density matrix dimension does not equal d1*d2");
    if (hermiticity_defect(m) > kHermTol)
        throw NonHermitian("density matrix is not Hermitian within 1e-8");
    const double tr = trace(m).real();
    if (std::abs(tr - 1.0) > kTraceTol)
        throw Error("density matrix trace deviates from 1 by more than 1e-8");
    ComplexMatrix h = hermitize(m);
    if (min_eigenvalue(h) < -kPsdTol)
        throw Error("density matrix has an eigenvalue below -1e-8");
    kernels::active().scal(static_cast<std::size_t>(h.dim()) * h.dim(), cplx{1.0 / tr, 0.0},
                           h.data());
    return DensityMatrix(std::move(h), dims);
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m, Dims dims) {
    return DensityMatrix(std::move(m), dims);
}

DensityMatrix ensemble_to_state(const ProductEnsemble& e) {
    const int d = e.dims.total();
    if (e.terms.empty()) throw ZeroEnsemble("ensemble has no terms");
    ComplexMatrix rho(d);
    const auto& k = kernels::active();
    for (const auto& term : e.terms) {
        if (static_cast<int>(term.phi1.size()) != e.dims.d1 ||
            static_cast<int>(term.phi2.size()) != e.dims.d2)
            throw DimensionMismatch("ensemble term vector lengths do not match dims");
        const Vec x = tensor_product_vec(term.phi1, term.phi2);
        for (int i = 0; i < d; ++i)
            k.axpyc(static_cast<std::size_t>(d), x[i], x.data(), rho.row(i));
    }
    const double tr = trace(rho).real();
    if (tr < 1e-14) throw ZeroEnsemble("ensemble trace is numerically zero");
    k.scal(static_cast<std::size_t>(d) * d, cplx{1.0 / tr, 0.0}, rho.data());
    return DensityMatrix::unchecked(hermitize(rho), e.dims);
}

ProductEnsemble random_product_ensemble(Dims dims, int k, std::uint64_t seed) {
    if (k < 1) throw DimensionMismatch("ensemble size must be >= 1");
    GaussianStream g(seed);
    for (int attempt = 0; attempt < 10; ++attempt) {
        ProductEnsemble e = draw_ensemble(dims, k, g);
        // full-rank guard only makes sense when the term count can span
        if (k < dims.total()) return e;
        const DensityMatrix rho = ensemble_to_state(e);
        if (min_eigenvalue(rho.matrix()) > 1e-9) return e;
    }
    throw DegenerateDraw("random ensemble stayed rank-deficient after 10 draws");
}

ComplexMatrix flip_operator(int d) {
    if (d < 2) throw DimensionMismatch("flip operator needs local dimension >= 2");
    ComplexMatrix f(d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
    return f;
}

DensityMatrix werner_state(WernerParameter p) {
    if (p.d < 2) throw DimensionMismatch("Werner state needs local dimension >= 2");
    if (p.f < -1.0 || p.f > 1.0) throw Error("Werner parameter f must lie in [-1, 1]");
    const double d = p.d;
    const double denom = d * (d * d - 1.0);
    const double a = (d - p.f) / denom;
    const double b = (p.f * d - 1.0) / denom;
    ComplexMatrix m = flip_operator(p.d);
    kernels::active().scal(static_cast<std::size_t>(m.dim()) * m.dim(), cplx{b, 0.0}, m.data());
    for (int i = 0; i < m.dim(); ++i) m(i, i) += a;
    return DensityMatrix::unchecked(std::move(m), Dims{p.d, p.d});
}

DensityMatrix random_separable(Dims dims, std::uint64_t seed) {
    const int k = dims.total() * dims.total();
    return ensemble_to_state(random_product_ensemble(dims, k, seed));
}

DensityMatrix random_npt(Dims dims, std::uint64_t seed) {
    const int d = dims.total();
    GaussianStream g(seed);
    const auto& k = kernels::active();
    for (int attempt = 0; attempt < 10000; ++attempt) {
        // G G' / Tr, full rank with probability 1
        ComplexMatrix gm(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) gm(i, j) = g.next_complex();
        ComplexMatrix rho = gm * adjoint(gm);
        const double tr = trace(rho).real();
        k.scal(static_cast<std::size_t>(d) * d, cplx{1.0 / tr, 0.0}, rho.data());
        rho = hermitize(rho);
        const double mineig = min_eigenvalue(partial_transpose(rho, dims, Subsystem::two));
        if (mineig < -1e-6) return DensityMatrix::unchecked(std::move(rho), dims);
    }
    throw SamplingExhausted("no NPT state found in 10^4 draws");
}

DensityMatrix random_pure(Dims dims, std::uint64_t seed) {
    GaussianStream g(seed);
    const Vec psi = normalized(g.vector(dims.total()));
    const int d = dims.total();
    ComplexMatrix rho(d);
    for (int i = 0; i < d; ++i)
        kernels::active().axpyc(static_cast<std::size_t>(d), psi[i], psi.data(), rho.row(i));
    return DensityMatrix::unchecked(hermitize(rho), dims);
}

Vec random_unit_vector(int n, std::uint64_t seed) {
    GaussianStream g(seed);
    return normalized(g.vector(n));
}

bool is_ppt(const DensityMatrix& sigma, double tol) {
    return min_eigenvalue(partial_transpose(sigma.matrix(), sigma.dims(), Subsystem::two)) >=
           -tol;
}

}  // namespace ree
