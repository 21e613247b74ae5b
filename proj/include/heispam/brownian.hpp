#pragma once

#include "heispam/group.hpp"
#include "heispam/rng.hpp"
#include "heispam/stats.hpp"

#include <vector>

namespace heispam {

struct PathConfig {
    int n = 1;
    double t_end = 1.0;
    long steps = 256;
    std::uint64_t rng_seed = 0;
};

/// A discretized Brownian trajectory on H^n with its Levy area.
/// points[k] = (B_k, beta_k, A_k) componentwise; times[0] = 0, points[0] = e.
struct HeisPath {
    std::vector<double> times;
    std::vector<std::vector<double>> euclid;  // per-time (B, beta) in R^{2n}
    std::vector<double> area;
    std::vector<GroupPoint> points;
};

/// Euler scheme with the left-point Levy-area update
/// A_{k+1} = A_k + 2 sum_i (B_k^i d beta^i - beta_k^i d B^i).
/// Ito and Stratonovich coincide here (vanishing cross-variation), so the
/// scheme is weak order 1.  Deterministic given cfg.rng_seed via `rng`.
HeisPath sample_path(const PathConfig& cfg, Rng& rng);

/// Final state only (no stored trajectory); used by the bulk diagnostics.
/// Writes B (2n comps) and the area A.
void sample_endpoint(int n, double t, long steps, Rng& rng, std::vector<double>& b,
                     double& area);

struct ScalingDiagnostic {
    KsResult ks;
    double mean_ratio = 0.0;      // E d(B_t,e) / E d(B_1,e)
    double mean_ratio_se = 0.0;
    double expected_ratio = 0.0;  // sqrt(t)
};

/// Two-sample KS between d(B_t, e) and sqrt(t) d(B_1, e)  (n = 1 by default).
ScalingDiagnostic scaling_diagnostic(int n, double t, long paths, long steps, Rng& rng);

/// MC estimate of P(sup_{s<=t} d(B_s, Btilde_s) <= eps) over independent
/// path pairs, sup approximated on the time grid.  Zero hits are flagged.
MomentEstimate small_ball_probability(double epsilon, double t, long paths, long steps,
                                      Rng& rng);

}  // namespace heispam
