#include "heispam/green.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace heispam {

namespace {

// Gaveau density evaluator shared by the Mellin integrals: direct adaptive
// quadrature by default, the n = 1 table when speed matters more.
double kernel_density(int n, double t, double r, double z, bool fast) {
    if (fast && n == 1) return HeatKernelTable::instance().density(t, r, z);
    QuadSpec sp;
    sp.rel_tol = 1e-9;
    sp.abs_tol = 1e-15;
    return eval_pt_rz(n, t, r, z, sp).value;
}

}  // namespace

double eval_G_rz(int n, double alpha, double r, double z, const GreenSpec& spec,
                 double smoothing) {
    if (!(alpha > 0.0) || !(alpha < n + 1))
        throw std::domain_error("eval_G: alpha must lie in (0, n+1)");
    if (!(spec.rel_tol > 0.0)) throw std::invalid_argument("eval_G: rel_tol must be > 0");
    const double N = r + std::sqrt(std::fabs(z));
    if (N <= 0.0 && smoothing <= 0.0)
        throw std::domain_error("eval_G: q = e is singular");

    // k_t(q) = p_{2t + 2*smoothing}(q)
    auto kt = [&](double t) { return kernel_density(n, 2.0 * (t + smoothing), r, z, spec.fast_kernel); };

    const double split = spec.t_split > 0.0 ? spec.t_split : std::max(N * N, 1e-8);

    // small-t panel via u = N^2 / t (u from N^2/split upward); when N = 0 the
    // smoothing makes the integrand regular and the panel is integrated in t.
    double small = 0.0;
    if (N > 0.0) {
        const double u_lo = N * N / split;
        const double u_hi = 4000.0;  // e^{-c u} dead long before this
        const int panels = std::max(8, spec.small_t_nodes / 4);
        std::vector<double> edges(static_cast<std::size_t>(panels) + 1);
        const double l0 = std::log(u_lo), l1 = std::log(u_hi);
        for (int i = 0; i <= panels; ++i)
            edges[static_cast<std::size_t>(i)] = std::exp(l0 + (l1 - l0) * i / panels);
        for (int p = 0; p < panels; ++p) {
            small += gl_integrate(
                [&](double u) {
                    const double t = N * N / u;
                    return std::pow(t, alpha - 1.0) * kt(t) * N * N / (u * u);
                },
                edges[static_cast<std::size_t>(p)], edges[static_cast<std::size_t>(p) + 1],
                10);
        }
    } else {
        const int panels = std::max(8, spec.small_t_nodes / 4);
        std::vector<double> edges(static_cast<std::size_t>(panels) + 1);
        const double l0 = std::log(std::max(1e-9, 1e-6 * smoothing)), l1 = std::log(split);
        for (int i = 0; i <= panels; ++i)
            edges[static_cast<std::size_t>(i)] = std::exp(l0 + (l1 - l0) * i / panels);
        for (int p = 0; p < panels; ++p)
            small += gl_integrate([&](double t) { return std::pow(t, alpha - 1.0) * kt(t); },
                                  edges[static_cast<std::size_t>(p)],
                                  edges[static_cast<std::size_t>(p) + 1], 10);
        // [0, t_min] head: integrand <= t^{alpha-1} k_smoothing(e)
        small += std::pow(edges[0], alpha) / alpha * kernel_density(n, 2.0 * smoothing, 0, 0, spec.fast_kernel);
    }

    // large-t: log-spaced panels until the analytic tail bound
    // k_t <= p_{2t}(e) = c_n / t^{n+1} is below tolerance.
    double large = 0.0;
    double t_hi = split;
    const int chunk = std::max(6, spec.large_t_nodes / 8);
    for (int round = 0; round < 60; ++round) {
        const double t_next = t_hi * 4.0;
        std::vector<double> edges(static_cast<std::size_t>(chunk) + 1);
        const double l0 = std::log(t_hi), l1 = std::log(t_next);
        for (int i = 0; i <= chunk; ++i)
            edges[static_cast<std::size_t>(i)] = std::exp(l0 + (l1 - l0) * i / chunk);
        for (int p = 0; p < chunk; ++p)
            large += gl_integrate([&](double t) { return std::pow(t, alpha - 1.0) * kt(t); },
                                  edges[static_cast<std::size_t>(p)],
                                  edges[static_cast<std::size_t>(p) + 1], 10);
        t_hi = t_next;
        const double tail = pt_at_identity(n, 2.0 * t_hi) * std::pow(t_hi, alpha) /
                            (n + 1.0 - alpha) * 2.0;
        const double sofar = small + large;
        if (tail < spec.rel_tol * std::max(sofar, 1e-300)) break;
    }

    return (small + large) / std::tgamma(alpha);
}

double eval_G(double alpha, const GroupPoint& q, const GreenSpec& spec, double smoothing) {
    double h = 0.0;
    for (std::size_t i = 0; i < q.dim(); ++i) h += q.x[i] * q.x[i] + q.y[i] * q.y[i];
    return eval_G_rz(static_cast<int>(q.dim()), alpha, std::sqrt(h), q.z, spec, smoothing);
}

// ---------------------------------------------------------------------------

GreenTable::GreenTable(double alpha, double smoothing)
    : alpha_(alpha), smoothing_(smoothing), beta_(2.0 * (2.0 - alpha)) {
    GreenSpec spec;
    if (smoothing <= 0.0) {
        // exact kernel: 1-d profile g(u) = G(e, (u, 0, (1-u)^2)), N = 1
        const int nu = 129;
        std::vector<double> us(nu), gs(nu);
        for (int i = 0; i < nu; ++i) {
            const double u = static_cast<double>(i) / (nu - 1);
            us[static_cast<std::size_t>(i)] = u;
            const double om = 1.0 - u;
            gs[static_cast<std::size_t>(i)] = eval_G_rz(1, alpha, u, om * om, spec, 0.0);
        }
        profile_ = CubicSpline(us, gs);
    } else {
        spec.fast_kernel = true;  // 2-d table tolerates the kernel-table error
        nN_ = 128;
        nu_ = 33;
        logN0_ = std::log(1e-3);
        const double logN1 = std::log(40.0);
        dlogN_ = (logN1 - logN0_) / (nN_ - 1);
        tab_.assign(static_cast<std::size_t>(nN_) * nu_, 0.0);
        for (int i = 0; i < nN_; ++i) {
            const double N = std::exp(logN0_ + i * dlogN_);
            for (int j = 0; j < nu_; ++j) {
                const double u = static_cast<double>(j) / (nu_ - 1);
                const double om = 1.0 - u;
                tab_[static_cast<std::size_t>(i) * nu_ + j] =
                    eval_G_rz(1, alpha, N * u, N * N * om * om, spec, smoothing);
            }
        }
    }
}

double GreenTable::value_rz(double r, double z) const {
    r = std::fabs(r);
    const double N = r + std::sqrt(std::fabs(z));
    if (smoothing_ <= 0.0) {
        if (N <= 0.0) return std::numeric_limits<double>::infinity();
        const double u = r / N;
        return profile_(u) * std::pow(N, -beta_);
    }
    const double u = N > 0.0 ? r / N : 0.0;
    const double Nmax = std::exp(logN0_ + (nN_ - 1) * dlogN_);
    if (N >= Nmax) {
        // beyond the table the smoothing is negligible: exact scaling tail
        const GreenTable& exact = GreenTable::get(alpha_, 0.0);
        return exact.value_rz(r, z);
    }
    const double lN = std::log(std::max(N, std::exp(logN0_)));
    double fi = (lN - logN0_) / dlogN_;
    int i = static_cast<int>(fi);
    if (i > nN_ - 2) i = nN_ - 2;
    fi -= i;
    double fj = u * (nu_ - 1);
    int j = static_cast<int>(fj);
    if (j > nu_ - 2) j = nu_ - 2;
    fj -= j;
    const double* base = tab_.data() + static_cast<std::size_t>(i) * nu_ + j;
    return base[0] * (1 - fi) * (1 - fj) + base[nu_] * fi * (1 - fj) +
           base[1] * (1 - fi) * fj + base[nu_ + 1] * fi * fj;
}

const GreenTable& GreenTable::get(double alpha, double smoothing) {
    static std::map<std::pair<double, double>, std::unique_ptr<GreenTable>> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto key = std::make_pair(alpha, smoothing);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<GreenTable>(alpha, smoothing)).first;
    return *it->second;
}

// ---------------------------------------------------------------------------

namespace {

double smootherstep(double s) {
    s = std::clamp(s, 0.0, 1.0);
    return s * s * s * (s * (6.0 * s - 15.0) + 10.0);
}

}  // namespace

double increment_variance(double alpha, const GroupPoint& x, const GroupPoint& y,
                          const IncrementVarianceSpec& spec) {
    if (x.dim() != 1 || y.dim() != 1)
        throw std::invalid_argument("increment_variance: n = 1 only");
    if (!(alpha > 1.0) || !(alpha < 1.5))
        throw std::domain_error("increment_variance: function regime (n+1)/2 < alpha < (n+2)/2");
    const h1::Pt X{x.x[0], x.y[0], x.z};
    const h1::Pt Y{y.x[0], y.y[0], y.z};
    const double s = h1::gauge(h1::diff(X, Y));
    if (s <= 0.0) return 0.0;

    const GreenTable& G = GreenTable::get(alpha, 0.0);
    const QuadRule& gu = gauss_legendre(spec.n_u);
    const QuadRule& gr = gauss_legendre(8);

    std::vector<double> edges(static_cast<std::size_t>(spec.n_rho) + 1);
    const double l0 = std::log(spec.rho_min_fac * s), l1 = std::log(spec.rho_max_fac * s);
    for (int i = 0; i <= spec.n_rho; ++i)
        edges[static_cast<std::size_t>(i)] = std::exp(l0 + (l1 - l0) * i / spec.n_rho);

    double total = 0.0;
    for (int chart = 0; chart < 2; ++chart) {
        const h1::Pt& center = chart == 0 ? X : Y;
        for (int p = 0; p < spec.n_rho; ++p) {
            const double c = 0.5 * (edges[static_cast<std::size_t>(p)] +
                                    edges[static_cast<std::size_t>(p) + 1]);
            const double hw = 0.5 * (edges[static_cast<std::size_t>(p) + 1] -
                                     edges[static_cast<std::size_t>(p)]);
            for (std::size_t a = 0; a < gr.nodes.size(); ++a) {
                const double rho = c + hw * gr.nodes[a];
                const double wr = hw * gr.weights[a];
                for (std::size_t b = 0; b < gu.nodes.size(); ++b) {
                    const double u = 0.5 * (gu.nodes[b] + 1.0);
                    const double wu = 0.5 * gu.weights[b];
                    const double rr = rho * u;
                    const double zz = rho * (1.0 - u);
                    const double jac = 2.0 * rho * rho * rho * u * (1.0 - u);
                    for (int ith = 0; ith < spec.n_theta; ++ith) {
                        const double th = (ith + 0.5) * 2.0 * M_PI / spec.n_theta;
                        const double wth = 2.0 * M_PI / spec.n_theta;
                        for (double sgn : {1.0, -1.0}) {
                            const h1::Pt w{rr * std::cos(th), rr * std::sin(th),
                                           sgn * zz * zz};
                            const h1::Pt q = h1::mul(center, w);
                            const h1::Pt dx = h1::diff(X, q);
                            const h1::Pt dy = h1::diff(Y, q);
                            const double Nx = h1::gauge(dx);
                            const double Ny = h1::gauge(dy);
                            const double frac =
                                (chart == 0 ? Ny : Nx) / std::max(Nx + Ny, 1e-300);
                            const double chi = smootherstep((frac - 0.35) / 0.3);
                            if (chi <= 0.0) continue;
                            const double gx = Nx > 0 ? G.value(dx) : 0.0;
                            const double gy = Ny > 0 ? G.value(dy) : 0.0;
                            const double d = gx - gy;
                            total += wr * wu * wth * jac * chi * d * d;
                        }
                    }
                }
            }
        }
    }
    return total;
}

}  // namespace heispam
