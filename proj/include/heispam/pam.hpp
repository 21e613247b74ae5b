#pragma once

#include "heispam/green.hpp"
#include "heispam/group.hpp"
#include "heispam/heat_kernel.hpp"
#include "heispam/rng.hpp"
#include "heispam/stats.hpp"

#include <vector>

namespace heispam {

struct ChaosParams {
    int n = 1;
    double alpha = 0.75;
    double t = 1.0;
    double N = 0.0;      // lambda split; 0 => chosen internally
    int m_tail = 200000; // m-sum truncation for the constants
    double rel_tol = 1e-8;
};

struct DalangResult {
    bool finite = false;
    double analytic_value = 0.0;   // \int_0^1 r^{4a-2n-1} dr when finite
    double quad_estimate = 0.0;    // ball integral at the smallest cutoff
    bool quad_divergent = false;   // cutoff growth detected
    std::vector<double> cutoff_values;
};

/// Dalang-type existence criterion: analytic polar reduction plus a
/// quadrature probe of \int_{B(e,1)} N(q)^{-2n} G_{2 alpha}(e,q) dmu(q)
/// under shrinking inner cutoffs (quadrature side n = 1 only).
DalangResult dalang_criterion(int n, double alpha);

struct ChaosConstants {
    double C0 = 0.0, C1 = 0.0, C2 = 0.0;
    double DN_plus = 0.0, DN_minus = 0.0;
    double N = 0.0;
};

/// C0 = 2^{n-1}/pi^{n+1}; C1 = sum (2|m|+n)^{-2 alpha};
/// C2 = (1/8) sum (2|m|+n)^{-(2 alpha+1)};
/// D_N^+ = 2 N^{n-2a}/(2a-n), D_N^- = 2 N^{n-2a+1}/(n-2a+1).
/// Requires n/2 < alpha < (n+1)/2.
ChaosConstants chaos_constants(const ChaosParams& p);

struct ChaosBound {
    double bound = 0.0;
    double N_chosen = 0.0;
    double contraction = 0.0;  // 2 C0 C2 D_N^+ < 1/2 at the chosen N
};

/// Closed-form majorant of sum_k k! |f_k|^2: picks N with
/// 2 C0 C2 D_N^+ = 1/4, then e^{2 C0 C1 D_N^- t} / (1 - 2 C0 C2 D_N^+).
ChaosBound chaos_series_bound(const ChaosParams& p);

struct NecessityReport {
    bool converged = false;
    double value = 0.0;              // converged M_{n,1}
    double exponent_eps = 0.0;       // fitted small-lambda cutoff exponent (<0 => divergent)
    double exponent_lambda = 0.0;    // fitted large-lambda cutoff exponent (>0 => divergent)
    bool divergent_small = false;
    bool divergent_large = false;
};

/// M_{n,1} = 2 sum_m (2|m|+n)^{-(2a+1)} \int lambda^{n-2a-1}(1-e^{-8 lambda (2|m|+n)}) d lambda
/// under growing cutoffs; reports the converged value inside the regime or
/// the fitted divergence exponents outside it.
NecessityReport necessity_probe(int n, double alpha, int doublings = 5);

struct FkResult {
    MomentEstimate at_eps;       // mollification scale eps
    MomentEstimate at_eps_half;  // eps/2, same paths (common random numbers)
    double kernel_cap = 0.0;     // capped kernel value at the diagonal
    long clipped_steps = 0;      // steps where the cap was active
};

/// Feynman-Kac second moment E[exp(c \int_0^t K(B_s, Btilde_s) ds)] over
/// independent Brownian pairs, K = G_{2 alpha} capped at its heat-mollified
/// version near the diagonal (switch radius 8 sqrt(eps)).  n = 1.
FkResult fk_second_moment(double alpha, double t, long samples, long steps,
                          double mollify_eps, Rng& rng, double c = 1.0,
                          const GroupPoint* start = nullptr);

struct SmoothMomentResult {
    MomentEstimate estimate;
    double rho = 0.0;  // (2a-n)/(2-(2a-n))
};

/// E[exp(beta \int_0^t d(B_s,e)^{4a-2(n+1)} ds)] with the homogeneous gauge,
/// log-sum-exp accumulation; returns the analytic rho as well.  n = 1.
SmoothMomentResult smooth_regime_moment(double alpha, double beta, double t, long samples,
                                        long steps, Rng& rng);

struct MildLatticeSpec {
    int nxy = 13;
    int nz = 13;
    double Lxy = 1.95;
    double Lz = 2.6;
};

struct MildResult {
    MomentEstimate second_moment;  // E[u(t, e)^2]
    MomentEstimate mean;           // E[u(t, e)]
    std::vector<double> field;     // one realization of u(t, .) on the lattice
    bool blowup = false;
    double gram_jitter = 0.0;
};

/// Explicit mild-equation stepping u_{k+1} = P_dt u_k + P_{dt/2}(u_k dW^eps)
/// on a truncated lattice: semigroup-exact propagation (cell-integrated
/// row-normalized Gaveau kernels) and noise with exact covariance
/// dt * (e^{eps Delta} G_{2 alpha}) via Cholesky.  u0 = 1.  n = 1.
MildResult mild_solver_mollified(double alpha, double t, const MildLatticeSpec& lat,
                                 int time_steps, int realizations, double mollify_eps,
                                 Rng& rng, double c = 1.0);

struct Order1Chaos {
    double direct = 0.0;    // \int_0^t \int G_{2a}(e,w) p_{2 tau}(w) dmu(w) d tau
    double spectral = 0.0;  // multiplier/Ito-isometry evaluation (closed lambda,tau integrals)
};

/// The k = 1 chaos variance of the mild solution (u0 = 1) computed two ways.
Order1Chaos chaos_order1_variance(double alpha, double t);

}  // namespace heispam
