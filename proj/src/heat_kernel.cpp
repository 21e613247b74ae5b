#include "heispam/heat_kernel.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace heispam {

namespace {

// (2 lam / sinh 2 lam)^n and lam*coth(2 lam) with their lam->0 limits.
inline double env_pow(double lam, int n) {
    if (lam < 1e-6) {
        const double g = 1.0 - (2.0 / 3.0) * lam * lam;
        return n == 1 ? g : std::pow(g, n);
    }
    const double g = 2.0 * lam / std::sinh(2.0 * lam);
    return n == 1 ? g : std::pow(g, n);
}

inline double coth_term(double lam) {
    if (lam < 1e-6) return 0.5 + (2.0 / 3.0) * lam * lam;
    return lam / std::tanh(2.0 * lam);
}

// Analytic cutoff: beyond L the envelope is below (4L)^n e^{-2nL} * 1.02^n.
double auto_cutoff(int n, double abs_tol) {
    double L = 6.0;
    for (int it = 0; it < 60; ++it) {
        const double bound = std::pow(4.0 * L, n) * std::exp(-2.0 * n * L) * 1.05 / (2.0 * n);
        if (bound < abs_tol * 0.1 || L > 400.0) break;
        L += 2.0;
    }
    return L;
}

}  // namespace

HeatKernelValue eval_pt_rz(int n, double t, double r, double z, const QuadSpec& spec) {
    if (!(t > 0.0)) throw std::invalid_argument("eval_pt: t must be > 0");
    if (n < 1) throw std::invalid_argument("eval_pt: n must be >= 1");
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
        throw std::invalid_argument("eval_pt: tolerances must be positive");

    const double zz = std::fabs(z) / t;          // oscillation frequency
    const double rr = r * r / t;                 // Gaussian decay strength
    const double norm = 2.0 / std::pow(2.0 * M_PI * t, n + 1);
    const double cutoff = spec.lambda_cutoff > 0.0 ? spec.lambda_cutoff
                                                   : auto_cutoff(n, spec.abs_tol);

    auto f = [&](double lam) {
        return std::cos(lam * zz) * env_pow(lam, n) * std::exp(-coth_term(lam) * rr);
    };

    // removable singularity at 0: series to O(lam^2) on [0, eps0]
    const double eps0 = 1e-3;
    const double a0 = std::exp(-0.5 * rr);
    const double c2 = (2.0 * n / 3.0) + (2.0 / 3.0) * rr + 0.5 * zz * zz;
    const double head = a0 * (eps0 - c2 * eps0 * eps0 * eps0 / 3.0);

    HeatKernelValue out;
    double integral = head;
    double err = a0 * std::pow(eps0, 5) * 0.3;  // next-order term scale
    bool converged = true;

    if (zz <= 8.0) {
        AdaptiveResult res = adaptive_gl(f, eps0, cutoff, spec.rel_tol * 0.5,
                                         spec.abs_tol * 0.5);
        integral += res.value;
        err += res.est_error;
        converged = res.converged;
    } else {
        // integrate on panels between the zeros of cos(lam*zz) and accelerate
        const double half = M_PI / zz;
        const double first_zero = 0.5 * half;
        AdaptiveResult pre = adaptive_gl(f, eps0, std::min(first_zero, cutoff),
                                         spec.rel_tol * 0.5, spec.abs_tol * 0.5);
        integral += pre.value;
        err += pre.est_error;
        const int max_panels =
            static_cast<int>(std::ceil((cutoff - first_zero) / half)) + 2;
        auto panel = [&](int k) -> double {
            const double a = first_zero + k * half;
            if (a >= cutoff) return 0.0;
            const double b = std::min(a + half, cutoff);
            return gl_integrate(f, a, b, 12);
        };
        SeriesResult sr = aitken_sum(panel, spec.rel_tol * 0.5, spec.abs_tol * 0.5, 4,
                                     max_panels);
        integral += sr.value;
        err += sr.est_error;
        converged = converged && sr.converged;
    }

    out.value = norm * integral;
    out.est_error = norm * err + spec.abs_tol * 0.1;  // cutoff tail allowance
    out.converged = converged;
    if (out.value < 0.0) {
        out.clamped = true;
        out.value = 0.0;
    }
    return out;
}

HeatKernelValue eval_pt(double t, const GroupPoint& q, const QuadSpec& spec) {
    double h = 0.0;
    for (std::size_t i = 0; i < q.dim(); ++i) h += q.x[i] * q.x[i] + q.y[i] * q.y[i];
    return eval_pt_rz(static_cast<int>(q.dim()), t, std::sqrt(h), q.z, spec);
}

double pt_at_identity(int n, double t) {
    if (n == 1) return 1.0 / (16.0 * t * t);
    if (n == 2) return 1.0 / (48.0 * M_PI * t * t * t);
    return eval_pt_rz(n, t, 0.0, 0.0).value;
}

// ---------------------------------------------------------------------------

HeatKernelTable::HeatKernelTable() : nr_(361), nz_(561) {
    rmax_ = 12.0;
    zmax_ = 70.0;
    dr_ = rmax_ / (nr_ - 1);
    dz_ = zmax_ / (nz_ - 1);
    tab_.assign(static_cast<std::size_t>(nr_) * nz_, 0.0);
    QuadSpec spec;
    spec.rel_tol = 1e-8;
    spec.abs_tol = 1e-14;
    for (int i = 0; i < nr_; ++i) {
        const double r = i * dr_;
        // beyond the Gaussian falloff everything is zero to double precision
        for (int j = 0; j < nz_; ++j) {
            const double z = j * dz_;
            if (0.25 * r * r + 0.7 * z > 46.0) continue;  // p_1 < 1e-20 here
            tab_[static_cast<std::size_t>(i) * nz_ + j] =
                eval_pt_rz(1, 1.0, r, z, spec).value;
        }
    }
}

const HeatKernelTable& HeatKernelTable::instance() {
    static HeatKernelTable tbl;
    return tbl;
}

double HeatKernelTable::density1(double r, double z) const {
    r = std::fabs(r);
    z = std::fabs(z);
    if (r >= rmax_ || z >= zmax_) return 0.0;
    const double fi = r / dr_, fj = z / dz_;
    int i = static_cast<int>(fi), j = static_cast<int>(fj);
    if (i > nr_ - 2) i = nr_ - 2;
    if (j > nz_ - 2) j = nz_ - 2;
    const double ai = fi - i, aj = fj - j;
    const double* base = tab_.data() + static_cast<std::size_t>(i) * nz_ + j;
    const double v = base[0] * (1 - ai) * (1 - aj) + base[nz_] * ai * (1 - aj) +
                     base[1] * (1 - ai) * aj + base[nz_ + 1] * ai * aj;
    return v > 0.0 ? v : 0.0;
}

double HeatKernelTable::density(double t, double r, double z) const {
    const double s = std::sqrt(t);
    return density1(r / s, z / t) / (t * t);
}

// ---------------------------------------------------------------------------

double radial_integral(const std::function<double(double, double)>& f, double rho_min,
                       double rho_max, int n_rho_panels, int nu, int n_gl) {
    const QuadRule& gu = gauss_legendre(nu);
    const QuadRule& gr = gauss_legendre(n_gl);
    // log-spaced rho edges
    std::vector<double> edges(n_rho_panels + 1);
    const double l0 = std::log(rho_min), l1 = std::log(rho_max);
    for (int i = 0; i <= n_rho_panels; ++i)
        edges[i] = std::exp(l0 + (l1 - l0) * i / n_rho_panels);
    double total = 0.0;
    for (int p = 0; p < n_rho_panels; ++p) {
        const double c = 0.5 * (edges[p] + edges[p + 1]);
        const double h = 0.5 * (edges[p + 1] - edges[p]);
        for (std::size_t a = 0; a < gr.nodes.size(); ++a) {
            const double rho = c + h * gr.nodes[a];
            const double wr = h * gr.weights[a];
            double inner = 0.0;
            for (std::size_t b = 0; b < gu.nodes.size(); ++b) {
                const double u = 0.5 * (gu.nodes[b] + 1.0);
                const double wu = 0.5 * gu.weights[b];
                const double r = rho * u;
                const double z = rho * (1.0 - u);
                inner += wu * f(r, z * z) * 2.0 * rho * rho * rho * u * (1.0 - u);
            }
            total += wr * inner;
        }
    }
    // 2 pi from the angle, 2 from the z sign
    return 4.0 * M_PI * total;
}

GaussianBoundFit gaussian_bound_ratio(int n, double t,
                                      const std::vector<GroupPoint>& sample_points,
                                      const QuadSpec& spec) {
    std::vector<double> xs, ys;
    GaussianBoundFit fit;
    for (const auto& q : sample_points) {
        const double N = gauge(q);
        if (N * N / t > 40.0) {
            ++fit.skipped;
            continue;
        }
        const HeatKernelValue v = eval_pt(t, q, spec);
        if (v.value <= 0.0) {
            ++fit.skipped;
            continue;
        }
        xs.push_back(-N * N / t);
        ys.push_back(std::log(v.value * std::pow(t, n + 1)));
    }
    if (xs.size() < 3) throw std::runtime_error("gaussian_bound_ratio: too few usable points");
    const LinearFit lf = linear_fit(xs, ys);
    fit.c_fit = lf.slope;
    fit.used = static_cast<int>(xs.size());
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double resid = ys[i] - (lf.intercept + lf.slope * xs[i]);
        lo = std::min(lo, resid);
        hi = std::max(hi, resid);
    }
    fit.min_ratio = std::exp(lo);
    fit.max_ratio = std::exp(hi);
    return fit;
}

MomentEstimate normalization_check(double t, long mc_samples, Rng& rng) {
    // proposal: (x,y) ~ N(0, t I_2) (the exact marginal), z ~ Cauchy(0, s_c)
    // with s_c = 2t + r^2, which dominates the exponential z tails.
    const HeatKernelTable& tbl = HeatKernelTable::instance();
    std::vector<double> w(static_cast<std::size_t>(mc_samples));
    const double st = std::sqrt(t);
    for (long i = 0; i < mc_samples; ++i) {
        const double x = st * rng.normal(), y = st * rng.normal();
        const double r2 = x * x + y * y;
        const double sc = 2.0 * t + r2;
        const double u = rng.uniform() - 0.5;
        const double z = sc * std::tan(M_PI * u);
        const double q_xy = std::exp(-r2 / (2.0 * t)) / (2.0 * M_PI * t);
        const double q_z = sc / (M_PI * (z * z + sc * sc));
        w[static_cast<std::size_t>(i)] = tbl.density(t, std::sqrt(r2), z) / (q_xy * q_z);
    }
    return mean_se(w);
}

MomentEstimate semigroup_check(double s, double t, const GroupPoint& q_target, long paths,
                               long steps, Rng& rng) {
    if (!(0.0 < s && s < t)) throw std::invalid_argument("semigroup_check: need 0 < s < t");
    if (q_target.dim() != 1) throw std::invalid_argument("semigroup_check: n = 1 only");
    const HeatKernelTable& tbl = HeatKernelTable::instance();
    const double dt = s / static_cast<double>(steps);
    const double sd = std::sqrt(dt);
    std::vector<double> vals(static_cast<std::size_t>(paths));
    for (long p = 0; p < paths; ++p) {
        h1::Pt b{0, 0, 0};
        for (long k = 0; k < steps; ++k) {
            const double dx = sd * rng.normal(), dy = sd * rng.normal();
            b.z += 2.0 * (b.x * dy - b.y * dx);
            b.x += dx;
            b.y += dy;
        }
        const h1::Pt d = h1::diff(b, h1::Pt{q_target.x[0], q_target.y[0], q_target.z});
        vals[static_cast<std::size_t>(p)] =
            tbl.density(t - s, std::sqrt(d.x * d.x + d.y * d.y), d.z);
    }
    return mean_se(vals);
}

}  // namespace heispam
