#include "ree/werner_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ree/errors.hpp"

namespace ree {

namespace {

// q ln(q/p) with the 0 ln 0 = 0 convention; +inf when q > 0, p = 0.
double kl_term(double q, double p) {
    if (q <= 0.0) return 0.0;
    if (p <= 0.0) return std::numeric_limits<double>::infinity();
    return q * std::log(q / p);
}

}  // namespace

double werner_relative_entropy(int d, double f_sigma, double f_rho) {
    if (d < 2) throw DimensionMismatch("Werner states need local dimension >= 2");
    const double qs = 0.5 * (1.0 + f_sigma);  // symmetric-subspace weight
    const double qa = 0.5 * (1.0 - f_sigma);
    const double ps = 0.5 * (1.0 + f_rho);
    const double pa = 0.5 * (1.0 - f_rho);
    // Subspace-internal uniform factors coincide and cancel; d only enters
    // through the (common) multiplicities.
    return kl_term(qs, ps) + kl_term(qa, pa);
}

WernerOracle werner_ree_oracle(int d, double f, int grid_points) {
    if (grid_points < 3) throw Error("werner_ree_oracle: grid too small");

    const auto objective = [&](double fp) { return werner_relative_entropy(d, f, fp); };

    double best_x = 0.0;
    double best_v = objective(0.0);
    for (int i = 1; i < grid_points; ++i) {
        const double x = static_cast<double>(i) / (grid_points - 1);
        const double v = objective(x);
        if (v < best_v) {
            best_v = v;
            best_x = x;
        }
    }

    // Golden-section refinement on the bracketing interval.
    const double step = 1.0 / (grid_points - 1);
    double lo = std::max(0.0, best_x - step);
    double hi = std::min(1.0, best_x + step);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (hi - lo > 1e-10) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = objective(x2);
        }
    }
    const double xm = 0.5 * (lo + hi);
    const double vm = objective(xm);
    if (vm < best_v) {
        best_v = vm;
        best_x = xm;
    }
    return WernerOracle{best_v, best_x};
}

}  // namespace ree
