#pragma once

#include <cstdint>
#include <vector>

#include "ree/eig.hpp"
#include "ree/entropy.hpp"
#include "ree/states.hpp"

namespace ree {

/// Gradient operator of S(sigma||.) at a full-rank reference state, with
/// divided-difference matrix elements in the reference eigenbasis.
struct AOperator {
    ComplexMatrix matrix;
    HermitianEigensystem basis;  // eigensystem of the reference state
    double degeneracy_tol = 1e-9;
};

struct IterationConfig {
    double alpha = 0.5;           // regularization step parameter
    int max_iters = 20000;
    double tol_entropy = 1e-12;   // stop when the per-iteration decrease is smaller
    double tol_residual = 1e-8;   // ... and the fixed-point residual too
    double sep_threshold = 1e-7;  // E below this => verdict separable (nats)
    int ensemble_size = 0;        // 0 = (d1*d2)^2
    std::uint64_t seed = 1;
    bool backtracking = true;
    int starts = 3;               // independent multi-starts, best E kept
};

struct TraceRecord {
    int iter;           // 1-based full iteration index
    double s_value;     // S(sigma||rho) after the iteration, nats
    double delta_s;     // s_value - previous s_value
    double alpha_used;  // working alpha at the end of the iteration
    double max_residual;  // max_k ||R~ P R~ - P||_F / ||P||_F over both half-steps
};

using ConvergenceTrace = std::vector<TraceRecord>;

enum class Verdict { separable, entangled };

const char* to_string(Verdict v);

struct REEResult {
    double entanglement = 0.0;  // nats
    DensityMatrix closest_separable;
    ProductEnsemble ensemble;
    AOperator a_operator;
    Verdict verdict = Verdict::separable;
    ConvergenceTrace trace;

    bool converged = false;  // stopping rule met before max_iters
    int iterations = 0;
    double final_residual = 0.0;
    int restarts_used = 0;
    int start_index = 0;
};

/// Matrix elements <m|A|n> = (ln l_n - ln l_m)/(l_n - l_m) <m|sigma|n> in
/// the eigenbasis of rho_star, rotated back to the computational basis.
/// Pairs with |l_n - l_m| < degeneracy_tol * max(l_n, l_m) use the limit
/// coefficient 1/l_n. Throws RankDeficientReference when rho_star has an
/// eigenvalue below the support floor.
AOperator build_a_operator(const DensityMatrix& sigma, const DensityMatrix& rho_star,
                           double degeneracy_tol = 1e-9);

/// d/dx S(sigma || (1-x) rho_star + x rho) at x = 0, i.e. Tr A (rho - rho_star).
double directional_derivative(const DensityMatrix& sigma, const DensityMatrix& rho_star,
                              const DensityMatrix& rho);

/// R_k for one ensemble term: the partial trace of A against the opposite
/// subsystem's projector normalized to unity.
ComplexMatrix r_operator(const AOperator& a, const ProductEnsemble& e, int term,
                         Subsystem subsystem);

/// One regularized update of the chosen subsystem's vectors,
/// phi_k -> (phi_k + (alpha/2) R_k phi_k) / (1 + alpha/2), followed by
/// global trace renormalization. The other subsystem is untouched.
ProductEnsemble half_step(const ProductEnsemble& e, const DensityMatrix& sigma,
                          Subsystem subsystem, double alpha);

/// max over terms and subsystems of ||R~ P R~ - P||_F / ||P||_F.
double max_fixed_point_residual(const ProductEnsemble& e, const DensityMatrix& sigma,
                                double alpha);

/// Full minimization: alternating regularized half-steps with backtracking,
/// multi-start, and restart-on-rank-collapse. Returns the relative entropy
/// of entanglement estimate, the closest separable state found, and the
/// convergence trace.
REEResult iterate(const DensityMatrix& sigma, const IterationConfig& config = {});

/// -log10 |S_i - reference| per trace record, floored at 1e-15.
std::vector<double> precision_digits(const ConvergenceTrace& trace, double reference_e);

}  // namespace ree
