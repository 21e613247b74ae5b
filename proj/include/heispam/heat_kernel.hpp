#pragma once

#include "heispam/group.hpp"
#include "heispam/quadrature.hpp"
#include "heispam/rng.hpp"
#include "heispam/stats.hpp"

#include <vector>

namespace heispam {

/// Controls for the oscillatory Gaveau integral.
struct QuadSpec {
    double lambda_cutoff = 0.0;  // 0 => choose from the analytic tail bound
    int nodes = 64;              // per-panel budget floor
    double rel_tol = 1e-9;
    double abs_tol = 1e-13;
};

struct HeatKernelValue {
    double value = 0.0;
    double est_error = 0.0;
    bool converged = true;
    bool clamped = false;  // tiny negative clamped to zero
};

/// Heat kernel p_t(q) of the Brownian motion on H^n (generator Delta/2),
/// i.e. the Gaveau oscillatory integral, by adaptive quadrature.
/// Reduced form: depends on q only through r = |(x,y)| and z.
HeatKernelValue eval_pt_rz(int n, double t, double r, double z, const QuadSpec& spec = {});

HeatKernelValue eval_pt(double t, const GroupPoint& q, const QuadSpec& spec = {});

/// p_t(e) closed forms used as oracles: n=1 -> 1/(16 t^2), n=2 -> 1/(48 pi t^3).
double pt_at_identity(int n, double t);

/// Fast bilinear-table evaluation of p_t for bulk Monte Carlo / Mellin use
/// (n = 1).  Exactness comes from the dilation identity
/// p_t(r,z) = t^{-(n+1)} p_1(r/sqrt(t), z/t); only p_1 is tabulated.
class HeatKernelTable {
  public:
    static const HeatKernelTable& instance();  // n = 1, lazily built
    double density(double t, double r, double z) const;
    double density1(double r, double z) const;  // p_1
  private:
    HeatKernelTable();
    int nr_, nz_;
    double dr_, dz_, rmax_, zmax_;
    std::vector<double> tab_;  // [ir*nz_+iz]
};

/// Integrate a radial function F(r, z) (even in z) against the Haar
/// measure on H^1 in gauge-polar coordinates.
double radial_integral(const std::function<double(double, double)>& f, double rho_min,
                       double rho_max, int n_rho_panels = 60, int nu = 24,
                       int n_gl = 10);

/// Fitted Gaussian-envelope diagnostics for eq-type two-sided bounds:
/// regresses log(p_t(q) t^{n+1}) against -N(e,q)^2/t over a sample and
/// reports the envelope ratios exp(residual).
struct GaussianBoundFit {
    double c_fit = 0.0;       // fitted decay constant
    double min_ratio = 1.0;   // envelope ratios around the fit
    double max_ratio = 1.0;
    int used = 0;
    int skipped = 0;          // points lost to underflow
};
GaussianBoundFit gaussian_bound_ratio(int n, double t,
                                      const std::vector<GroupPoint>& sample_points,
                                      const QuadSpec& spec = {});

/// Importance-sampled check of \int p_t d\mu = 1 (n = 1).
MomentEstimate normalization_check(double t, long mc_samples, Rng& rng);

/// Monte Carlo Chapman-Kolmogorov: E[p_{t-s}(B_s^{-1} q)] vs p_t(q) (n = 1).
/// Returns the MC estimate; the caller compares to eval_pt(t, q).
MomentEstimate semigroup_check(double s, double t, const GroupPoint& q_target, long paths,
                               long steps, Rng& rng);

}  // namespace heispam
