#pragma once

namespace ree {

/// S(rho_w(f_sigma) || rho_w(f_rho)) for two Werner states on d (x) d.
/// Werner states are simultaneously diagonal (both are functions of the flip
/// operator), so this reduces to the classical relative entropy between the
/// symmetric/antisymmetric subspace weights ((1+f)/2, (1-f)/2).
double werner_relative_entropy(int d, double f_sigma, double f_rho);

struct WernerOracle {
    double entanglement;  // min over separable Werner states, nats
    double f_star;        // minimizing flip expectation in [0, 1]
};

/// Reference value for the relative entropy of entanglement of a Werner
/// state: dense grid over f' in [0,1] followed by golden-section refinement
/// of the bracketing interval down to width 1e-10. Independent of the
/// fixed-point solver.
WernerOracle werner_ree_oracle(int d, double f, int grid_points = 100000);

}  // namespace ree
