#include "ree/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ree/kernels.hpp"

namespace ree {

namespace {

constexpr double kEscapeWeightTol = 1e-9;  // sigma weight on floored kernel => escape
constexpr double kDeadTermWeight = 1e-14;  // relative weight below which a term is frozen
constexpr double kDefaultDegeneracyTol = 1e-9;
constexpr int kMaxHalvings = 30;
constexpr int kMaxRestarts = 3;
constexpr int kRecoverySteps = 5;
constexpr double kRecoveryFactor = 1.5;

Subsystem other(Subsystem s) { return s == Subsystem::one ? Subsystem::two : Subsystem::one; }

Vec& term_vec(ProductEnsemble::Term& t, Subsystem s) {
    return s == Subsystem::one ? t.phi1 : t.phi2;
}

const Vec& term_vec(const ProductEnsemble::Term& t, Subsystem s) {
    return s == Subsystem::one ? t.phi1 : t.phi2;
}

// (ln b - ln a)/(b - a) with the degenerate-pair limit 1/b.
double divided_difference(double a, double b, double tol) {
    const double diff = b - a;
    if (std::abs(diff) < tol * std::max(a, b)) return 1.0 / b;
    return std::log1p(diff / a) / diff;
}

// A in the reference eigenbasis: coefficients times sigma_tilde, Hermitian
// by construction.
ComplexMatrix a_in_basis(const std::vector<double>& lam, const ComplexMatrix& sigma_tilde,
                         double tol) {
    const int n = static_cast<int>(lam.size());
    ComplexMatrix at(n);
    for (int m = 0; m < n; ++m) {
        at(m, m) = sigma_tilde(m, m).real() / lam[m];
        for (int q = m + 1; q < n; ++q) {
            const double c = divided_difference(lam[m], lam[q], tol);
            at(m, q) = c * sigma_tilde(m, q);
            at(q, m) = std::conj(at(m, q));
        }
    }
    return at;
}

double clamp_tiny_negative(double x) { return (x < 0.0 && x > -1e-10) ? 0.0 : x; }

// ---------------------------------------------------------------------------
// Iteration state
// ---------------------------------------------------------------------------

struct SigmaContext {
    const DensityMatrix* sigma = nullptr;
    double tr_sigma_ln_sigma = 0.0;
    double degeneracy_tol = kDefaultDegeneracyTol;
};

SigmaContext make_context(const DensityMatrix& sigma, double degeneracy_tol) {
    SigmaContext ctx;
    ctx.sigma = &sigma;
    ctx.degeneracy_tol = degeneracy_tol;
    ctx.tr_sigma_ln_sigma = 0.0;
    for (double lam : hermitian_eigenvalues(sigma.matrix()))
        if (lam > kSupportFloor) ctx.tr_sigma_ln_sigma += lam * std::log(lam);
    return ctx;
}

ComplexMatrix induced_matrix(const ProductEnsemble& e) {
    const int d = e.dims.total();
    ComplexMatrix rho(d);
    const auto& k = kernels::active();
    for (const auto& term : e.terms) {
        const Vec x = tensor_product_vec(term.phi1, term.phi2);
        for (int i = 0; i < d; ++i)
            k.axpyc(static_cast<std::size_t>(d), x[i], x.data(), rho.row(i));
    }
    return hermitize(rho);
}

double total_weight(const ProductEnsemble& e) {
    double t = 0.0;
    for (const auto& term : e.terms) t += vec_norm_sq(term.phi1) * vec_norm_sq(term.phi2);
    return t;
}

void scale_subsystem(ProductEnsemble& e, Subsystem s, double factor) {
    const auto& k = kernels::active();
    for (auto& term : e.terms) {
        Vec& v = term_vec(term, s);
        k.scal(v.size(), cplx{factor, 0.0}, v.data());
    }
}

// Scales subsystem-one vectors so the induced trace is 1.
void normalize_ensemble(ProductEnsemble& e) {
    const double t = total_weight(e);
    if (t < 1e-14) throw ZeroEnsemble("ensemble trace is numerically zero");
    scale_subsystem(e, Subsystem::one, 1.0 / std::sqrt(t));
}

struct IterState {
    ProductEnsemble ens;
    std::vector<double> weights;  // per-term weight, sums to ~1
    std::vector<char> dead;
    ComplexMatrix rho;
    HermitianEigensystem eig;
    ComplexMatrix v_adj;          // eigenvectors'
    std::vector<double> lam_floored;
    ComplexMatrix sigma_tilde;    // V' sigma V
    double s_value = 0.0;
    double escape_weight = 0.0;
};

// Recomputes everything derived from the ensemble vectors.
void refresh(IterState& st, const SigmaContext& ctx, const ComplexMatrix* warm) {
    st.rho = induced_matrix(st.ens);
    st.eig = hermitian_eig(st.rho, warm);
    st.v_adj = adjoint(st.eig.eigenvectors);

    const int d = st.rho.dim();
    st.lam_floored.resize(d);
    for (int n = 0; n < d; ++n)
        st.lam_floored[n] = std::max(st.eig.eigenvalues[n], kSupportFloor);

    st.sigma_tilde = st.v_adj * ctx.sigma->matrix() * st.eig.eigenvectors;

    st.s_value = ctx.tr_sigma_ln_sigma;
    st.escape_weight = 0.0;
    for (int n = 0; n < d; ++n) {
        const double w = std::max(0.0, st.sigma_tilde(n, n).real());
        st.s_value -= w * std::log(st.lam_floored[n]);
        if (st.eig.eigenvalues[n] <= kSupportFloor) st.escape_weight += w;
    }

    st.weights.resize(st.ens.size());
    st.dead.assign(st.ens.size(), 0);
    for (std::size_t k = 0; k < st.ens.size(); ++k) {
        st.weights[k] =
            vec_norm_sq(st.ens.terms[k].phi1) * vec_norm_sq(st.ens.terms[k].phi2);
        if (st.weights[k] < kDeadTermWeight) st.dead[k] = 1;
    }
}

ComplexMatrix gradient_matrix(const IterState& st, double degeneracy_tol) {
    const ComplexMatrix at = a_in_basis(st.lam_floored, st.sigma_tilde, degeneracy_tol);
    return hermitize(st.eig.eigenvectors * at * st.v_adj);
}

// Per-term data that does not depend on alpha.
struct StagedStep {
    ComplexMatrix a;
    std::vector<Vec> r_phi;    // R_k phi_k for live terms
    std::vector<char> live;
};

StagedStep stage_half_step(const IterState& st, const SigmaContext& ctx, Subsystem s,
                           bool skip_dead) {
    StagedStep out;
    out.a = gradient_matrix(st, ctx.degeneracy_tol);
    const Dims dims = st.ens.dims;
    out.r_phi.resize(st.ens.size());
    out.live.assign(st.ens.size(), 1);
    for (std::size_t k = 0; k < st.ens.size(); ++k) {
        if (skip_dead && st.dead[k]) {
            out.live[k] = 0;
            continue;
        }
        const Vec& self = term_vec(st.ens.terms[k], s);
        const Vec& opp = term_vec(st.ens.terms[k], other(s));
        const ComplexMatrix r = partial_expectation(out.a, dims, normalized(opp), s);
        out.r_phi[k] = mat_vec(r, self);
    }
    return out;
}

// ||psi><psi| - |phi><phi||_F / ||phi||^2, computed from delta = psi - phi
// so it stays accurate near the fixed point.
double rank1_residual(const Vec& phi, const Vec& psi) {
    const std::size_t n = phi.size();
    Vec delta(n);
    for (std::size_t i = 0; i < n; ++i) delta[i] = psi[i] - phi[i];
    const double b = vec_norm_sq(phi);
    const double nd = vec_norm_sq(delta);
    const cplx ip = vec_dotc(phi, delta);
    const double r2 = 2.0 * nd * b + 2.0 * (ip * ip).real() + 4.0 * nd * ip.real() + nd * nd;
    return std::sqrt(std::max(0.0, r2)) / b;
}

struct AppliedStep {
    std::vector<Vec> new_self;  // for all terms (dead ones keep their vector)
    double max_residual = 0.0;
};

AppliedStep apply_alpha(const IterState& st, const StagedStep& staged, Subsystem s,
                        double alpha) {
    const auto& k = kernels::active();
    const double half = 0.5 * alpha;
    const double denom = 1.0 + half;
    AppliedStep out;
    out.new_self.resize(st.ens.size());
    double t_total = 0.0;
    for (std::size_t i = 0; i < st.ens.size(); ++i) {
        const Vec& self = term_vec(st.ens.terms[i], s);
        if (!staged.live[i]) {
            out.new_self[i] = self;
            t_total += vec_norm_sq(self) * vec_norm_sq(term_vec(st.ens.terms[i], other(s)));
            continue;
        }
        Vec psi = self;
        k.scal(psi.size(), cplx{1.0 / denom, 0.0}, psi.data());
        k.axpy(psi.size(), cplx{half / denom, 0.0}, staged.r_phi[i].data(), psi.data());
        out.max_residual = std::max(out.max_residual, rank1_residual(self, psi));
        t_total += vec_norm_sq(psi) * vec_norm_sq(term_vec(st.ens.terms[i], other(s)));
        out.new_self[i] = std::move(psi);
    }
    if (t_total < 1e-14) throw ZeroEnsemble("ensemble trace collapsed during update");
    const double scale = 1.0 / std::sqrt(t_total);
    for (auto& v : out.new_self) k.scal(v.size(), cplx{scale, 0.0}, v.data());
    return out;
}

struct AlphaState {
    double cap = 0.5;      // config alpha; working alpha never exceeds it
    double current = 0.5;
    int accepted_in_row = 0;
};

enum class StepOutcome { accepted, needs_restart };

// One half-step with backtracking: retries with halved alpha while the
// relative entropy increases (or the trial state escapes sigma's support).
StepOutcome do_half_step(IterState& st, const SigmaContext& ctx, Subsystem s,
                         AlphaState& as, bool backtracking, double& residual_out) {
    const StagedStep staged = stage_half_step(st, ctx, s, /*skip_dead=*/true);
    double alpha = as.current;
    int halvings = 0;
    for (;;) {
        const AppliedStep applied = apply_alpha(st, staged, s, alpha);
        IterState trial = st;
        for (std::size_t k = 0; k < trial.ens.size(); ++k)
            term_vec(trial.ens.terms[k], s) = applied.new_self[k];
        refresh(trial, ctx, &st.eig.eigenvectors);

        const bool supported =
            std::isfinite(trial.s_value) && trial.escape_weight <= kEscapeWeightTol;
        if (!supported) {
            if (!backtracking || halvings >= kMaxHalvings) return StepOutcome::needs_restart;
            alpha *= 0.5;
            ++halvings;
            continue;
        }
        const bool descent = trial.s_value <= st.s_value;
        if (descent || !backtracking || halvings >= kMaxHalvings) {
            st = std::move(trial);
            residual_out = applied.max_residual;
            if (halvings > 0) {
                as.current = alpha;
                as.accepted_in_row = 0;
            } else if (++as.accepted_in_row >= kRecoverySteps) {
                as.current = std::min(as.current * kRecoveryFactor, as.cap);
                as.accepted_in_row = 0;
            }
            return StepOutcome::accepted;
        }
        alpha *= 0.5;
        ++halvings;
    }
}

// Restart ensemble: fresh random terms carrying 99% of the trace plus the
// computational product basis carrying 1% (pulls the iterate back into the
// interior).
ProductEnsemble restart_ensemble(Dims dims, int k, std::uint64_t seed) {
    ProductEnsemble e = random_product_ensemble(dims, k, seed);
    const double t = total_weight(e);
    scale_subsystem(e, Subsystem::one, std::sqrt(0.99 / t));
    const double w0 = 0.01 / dims.total();
    const double amp = std::pow(w0, 0.25);
    for (int i = 0; i < dims.d1; ++i)
        for (int j = 0; j < dims.d2; ++j) {
            ProductEnsemble::Term term;
            term.phi1.assign(dims.d1, cplx{0.0, 0.0});
            term.phi2.assign(dims.d2, cplx{0.0, 0.0});
            term.phi1[i] = amp;
            term.phi2[j] = amp;
            e.terms.push_back(std::move(term));
        }
    return e;
}

// Rescales each live term so its two vectors carry equal norm; the induced
// state is unchanged.
void rebalance_terms(IterState& st) {
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < st.ens.size(); ++i) {
        if (st.dead[i]) continue;
        auto& term = st.ens.terms[i];
        const double n1 = std::sqrt(vec_norm_sq(term.phi1));
        const double n2 = std::sqrt(vec_norm_sq(term.phi2));
        if (n1 <= 0.0 || n2 <= 0.0) continue;
        const double c = std::sqrt(n2 / n1);
        k.scal(term.phi1.size(), cplx{c, 0.0}, term.phi1.data());
        k.scal(term.phi2.size(), cplx{1.0 / c, 0.0}, term.phi2.data());
    }
}

REEResult run_single(const DensityMatrix& sigma, const IterationConfig& cfg,
                     const SigmaContext& ctx, std::uint64_t run_seed) {
    const Dims dims = sigma.dims();
    const int p = dims.total();
    const int k = cfg.ensemble_size > 0 ? cfg.ensemble_size : p * p;

    IterState st;
    st.ens = random_product_ensemble(dims, k, run_seed);
    normalize_ensemble(st.ens);
    refresh(st, ctx, nullptr);

    AlphaState as{cfg.alpha, cfg.alpha, 0};
    REEResult res;
    res.trace.reserve(std::min(cfg.max_iters, 4096));

    double prev_s = st.s_value;
    int restarts = 0;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        double res1 = 0.0;
        double res2 = 0.0;
        StepOutcome o = do_half_step(st, ctx, Subsystem::one, as, cfg.backtracking, res1);
        if (o == StepOutcome::accepted)
            o = do_half_step(st, ctx, Subsystem::two, as, cfg.backtracking, res2);

        if (o == StepOutcome::needs_restart) {
            if (++restarts > kMaxRestarts)
                throw RankCollapse("iterate lost sigma's support after 3 restarts");
            st.ens = restart_ensemble(dims, k, derive_seed(run_seed, 100 + restarts));
            normalize_ensemble(st.ens);
            refresh(st, ctx, nullptr);
            as = AlphaState{cfg.alpha, cfg.alpha, 0};
            prev_s = st.s_value;
            continue;
        }

        rebalance_terms(st);
        const double max_res = std::max(res1, res2);
        res.trace.push_back({iter, st.s_value, st.s_value - prev_s, as.current, max_res});
        if (std::abs(st.s_value - prev_s) < cfg.tol_entropy && max_res < cfg.tol_residual) {
            res.converged = true;
            break;
        }
        prev_s = st.s_value;
    }

    res.entanglement = clamp_tiny_negative(st.s_value);
    res.verdict =
        res.entanglement < cfg.sep_threshold ? Verdict::separable : Verdict::entangled;
    res.a_operator =
        AOperator{gradient_matrix(st, ctx.degeneracy_tol), st.eig, ctx.degeneracy_tol};
    res.closest_separable = DensityMatrix::unchecked(st.rho, dims);
    res.ensemble = std::move(st.ens);
    res.iterations = res.trace.empty() ? 0 : res.trace.back().iter;
    res.final_residual = res.trace.empty() ? 0.0 : res.trace.back().max_residual;
    res.restarts_used = restarts;
    return res;
}

}  // namespace

const char* to_string(Verdict v) {
    return v == Verdict::separable ? "Separable" : "Entangled";
}

AOperator build_a_operator(const DensityMatrix& sigma, const DensityMatrix& rho_star,
                           double degeneracy_tol) {
    if (sigma.dim() != rho_star.dim())
        throw DimensionMismatch("A operator needs states of equal dimension");
    HermitianEigensystem es = hermitian_eig(rho_star.matrix());
    if (es.eigenvalues.front() < kSupportFloor)
        throw RankDeficientReference(
            "reference state has an eigenvalue below the support floor");
    const ComplexMatrix v_adj = adjoint(es.eigenvectors);
    const ComplexMatrix sigma_tilde = v_adj * sigma.matrix() * es.eigenvectors;
    const ComplexMatrix at = a_in_basis(es.eigenvalues, sigma_tilde, degeneracy_tol);
    ComplexMatrix a = hermitize(es.eigenvectors * at * v_adj);
    return AOperator{std::move(a), std::move(es), degeneracy_tol};
}

double directional_derivative(const DensityMatrix& sigma, const DensityMatrix& rho_star,
                              const DensityMatrix& rho) {
    if (rho.dim() != rho_star.dim())
        throw DimensionMismatch("directional derivative needs states of equal dimension");
    const AOperator a = build_a_operator(sigma, rho_star);
    const ComplexMatrix delta = rho.matrix() - rho_star.matrix();
    // Tr(A delta) = sum conj(delta_ij) a_ij for Hermitian delta
    const std::size_t n = static_cast<std::size_t>(delta.dim()) * delta.dim();
    return kernels::active().dotc(n, delta.data(), a.matrix.data()).real();
}

ComplexMatrix r_operator(const AOperator& a, const ProductEnsemble& e, int term,
                         Subsystem subsystem) {
    if (term < 0 || term >= static_cast<int>(e.size()))
        throw DimensionMismatch("r_operator: term index out of range");
    if (a.matrix.dim() != e.dims.total())
        throw DimensionMismatch("r_operator: operator does not match ensemble dims");
    const Vec& opp = term_vec(e.terms[term], other(subsystem));
    return hermitize(partial_expectation(a.matrix, e.dims, normalized(opp), subsystem));
}

ProductEnsemble half_step(const ProductEnsemble& e, const DensityMatrix& sigma,
                          Subsystem subsystem, double alpha) {
    if (sigma.dims() != e.dims)
        throw DimensionMismatch("half_step: sigma and ensemble dims differ");
    const SigmaContext ctx = make_context(sigma, kDefaultDegeneracyTol);
    IterState st;
    st.ens = e;
    normalize_ensemble(st.ens);
    refresh(st, ctx, nullptr);
    if (st.eig.eigenvalues.front() < kSupportFloor)
        throw RankCollapse("half_step: induced state is not full rank");
    const StagedStep staged = stage_half_step(st, ctx, subsystem, /*skip_dead=*/false);
    const AppliedStep applied = apply_alpha(st, staged, subsystem, alpha);
    ProductEnsemble out = st.ens;
    for (std::size_t k = 0; k < out.size(); ++k)
        term_vec(out.terms[k], subsystem) = applied.new_self[k];
    return out;
}

double max_fixed_point_residual(const ProductEnsemble& e, const DensityMatrix& sigma,
                                double alpha) {
    if (sigma.dims() != e.dims)
        throw DimensionMismatch("residual: sigma and ensemble dims differ");
    const SigmaContext ctx = make_context(sigma, kDefaultDegeneracyTol);
    IterState st;
    st.ens = e;
    normalize_ensemble(st.ens);
    refresh(st, ctx, nullptr);
    if (st.eig.eigenvalues.front() < kSupportFloor)
        throw RankCollapse("residual: induced state is not full rank");
    double worst = 0.0;
    for (Subsystem s : {Subsystem::one, Subsystem::two}) {
        const StagedStep staged = stage_half_step(st, ctx, s, /*skip_dead=*/false);
        worst = std::max(worst, apply_alpha(st, staged, s, alpha).max_residual);
    }
    return worst;
}

REEResult iterate(const DensityMatrix& sigma, const IterationConfig& config) {
    if (config.alpha <= 0.0) throw Error("iterate: alpha must be positive");
    if (config.tol_entropy <= 0.0 || config.tol_residual <= 0.0 ||
        config.sep_threshold <= 0.0)
        throw Error("iterate: tolerances must be positive");
    const SigmaContext ctx = make_context(sigma, kDefaultDegeneracyTol);
    const int starts = std::max(1, config.starts);

    bool have = false;
    REEResult best;
    for (int s = 0; s < starts; ++s) {
        REEResult res;
        try {
            res = run_single(sigma, config, ctx, derive_seed(config.seed, s));
        } catch (const RankCollapse&) {
            if (s + 1 == starts && !have) throw;
            continue;
        }
        res.start_index = s;
        if (!have || res.entanglement < best.entanglement) {
            best = std::move(res);
            have = true;
        }
        // E >= 0, so a converged run below the separability threshold
        // cannot be improved in any way that matters.
        if (best.converged && best.entanglement < config.sep_threshold) break;
    }
    if (!have) throw RankCollapse("iterate: every start collapsed");
    return best;
}

std::vector<double> precision_digits(const ConvergenceTrace& trace, double reference_e) {
    if (reference_e < 0.0) throw Error("precision_digits: reference must be >= 0");
    std::vector<double> out;
    out.reserve(trace.size());
    for (const auto& rec : trace)
        out.push_back(-std::log10(std::max(std::abs(rec.s_value - reference_e), 1e-15)));
    return out;
}

}  // namespace ree
