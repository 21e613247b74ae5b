#pragma once

#include "heispam/group.hpp"
#include "heispam/heat_kernel.hpp"
#include "heispam/quadrature.hpp"

#include <memory>

namespace heispam {

struct GreenSpec {
    double t_split = 0.0;   // 0 => N(e,q)^2
    int small_t_nodes = 48; // GL panels on the u = N^2/t substitution
    int large_t_nodes = 64; // log-spaced GL panels above the split
    double rel_tol = 1e-7;
    bool fast_kernel = false;  // interpolate p_t from the table (bulk use only)
};

/// Fractional Green kernel G_alpha(e, q) = kernel of (-Delta)^{-alpha}:
/// (1/Gamma(alpha)) \int_0^inf t^{alpha-1} k_t(q) dt with k_t = e^{t Delta}
/// = Gaveau p_{2t}.  Requires 0 < alpha < n+1 and q != e.
/// `smoothing` >= 0 evaluates the heat-mollified kernel e^{smoothing*Delta} G_alpha
/// (the t-integral shifted by `smoothing`), which is finite at q = e.
double eval_G(double alpha, const GroupPoint& q, const GreenSpec& spec = {},
              double smoothing = 0.0);

/// Reduced form in (r, z) for n set explicitly.
double eval_G_rz(int n, double alpha, double r, double z, const GreenSpec& spec = {},
                 double smoothing = 0.0);

/// Fast evaluation machinery for n = 1, one instance per (alpha, smoothing):
///  - smoothing == 0: 1-d gauge profile spline + exact N-homogeneity;
///  - smoothing  > 0: bilinear table on (log N, u = r/N).
class GreenTable {
  public:
    GreenTable(double alpha, double smoothing);
    double value_rz(double r, double z) const;
    double value(const h1::Pt& d) const {
        return value_rz(std::sqrt(d.x * d.x + d.y * d.y), d.z);
    }
    double alpha() const { return alpha_; }
    double smoothing() const { return smoothing_; }

    /// Process-wide cache keyed by (alpha, smoothing).
    static const GreenTable& get(double alpha, double smoothing);

  private:
    double alpha_ = 0.0, smoothing_ = 0.0, beta_ = 0.0;
    CubicSpline profile_;               // exact kernel: g(u) at N = 1
    int nN_ = 0, nu_ = 0;               // mollified table dims
    double logN0_ = 0.0, dlogN_ = 0.0;
    std::vector<double> tab_;
};

/// Squared L^2 increment \int (G_alpha(x,q) - G_alpha(y,q))^2 dmu(q) by
/// deterministic gauge-polar quadrature with a smooth two-chart partition of
/// unity around the two singularities (n = 1; function regime
/// (n+1)/2 < alpha < (n+2)/2 required for convergence).
struct IncrementVarianceSpec {
    int n_rho = 72;
    int n_u = 20;
    int n_theta = 24;
    double rho_min_fac = 1e-3;   // times the pair scale
    double rho_max_fac = 4000.0; // times the pair scale
};
double increment_variance(double alpha, const GroupPoint& x, const GroupPoint& y,
                          const IncrementVarianceSpec& spec = {});

}  // namespace heispam
