#include "heispam/pam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heispam {

namespace {

long multi_index_count(int n, long M) {
    // #{m in N^n : |m| = M} = C(M+n-1, n-1)
    if (n == 1) return 1;
    long c = 1;
    for (int i = 1; i < n; ++i) c = c * (M + i) / i;
    return c;
}

// sum over m in N^n of (2|m|+n)^{-s}, with an integral tail estimate
double multi_zeta(int n, double s, long m_tail) {
    double sum = 0.0;
    for (long M = 0; M < m_tail; ++M)
        sum += static_cast<double>(multi_index_count(n, M)) * std::pow(2.0 * M + n, -s);
    // tail: counts ~ M^{n-1}/(n-1)!
    double fact = 1.0;
    for (int i = 2; i < n; ++i) fact *= i;
    const double Mt = static_cast<double>(m_tail);
    if (s > n)
        sum += std::pow(2.0, -s) * std::pow(Mt, n - s) / ((s - n) * fact);
    return sum;
}

}  // namespace

DalangResult dalang_criterion(int n, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 0.5 * (n + 1)))
        throw std::domain_error("dalang_criterion: need 0 < alpha < (n+1)/2");
    DalangResult res;
    const double expo = 4.0 * alpha - 2.0 * n;  // \int_0^1 r^{expo-1} dr
    res.finite = expo > 0.0;
    res.analytic_value = res.finite ? 1.0 / expo : std::numeric_limits<double>::infinity();

    if (n == 1) {
        const GreenTable& G = GreenTable::get(2.0 * alpha, 0.0);
        auto ball_integral = [&](double eps_cut) {
            return radial_integral(
                [&](double r, double z) {
                    const double N = r + std::sqrt(z);
                    if (N < eps_cut || N > 1.0) return 0.0;
                    return std::pow(N, -2.0 * n) * G.value_rz(r, z);
                },
                eps_cut * 0.5, 1.0, 60, 24);
        };
        double prev = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double eps = 1e-1 * std::pow(10.0, -k);
            const double v = ball_integral(eps);
            res.cutoff_values.push_back(v);
            if (k > 0 && res.finite) {
                // converged if the increment keeps shrinking
                if (std::fabs(v - prev) > 0.5 * std::fabs(prev) && k == 3)
                    res.quad_divergent = true;
            }
            prev = v;
        }
        res.quad_estimate = res.cutoff_values.back();
        if (!res.finite) {
            // divergence: increments must grow
            const auto& cv = res.cutoff_values;
            res.quad_divergent =
                (cv[3] - cv[2]) > (cv[2] - cv[1]) && (cv[2] - cv[1]) > 0.0;
        }
    }
    return res;
}

ChaosConstants chaos_constants(const ChaosParams& p) {
    const int n = p.n;
    const double a = p.alpha;
    if (!(a > 0.5 * n) || !(a < 0.5 * (n + 1)))
        throw std::domain_error("chaos_constants: need n/2 < alpha < (n+1)/2");
    ChaosConstants c;
    c.C0 = std::pow(2.0, n - 1) / std::pow(M_PI, n + 1);
    c.C1 = multi_zeta(n, 2.0 * a, p.m_tail);
    c.C2 = 0.125 * multi_zeta(n, 2.0 * a + 1.0, p.m_tail);
    const double N = p.N > 0.0 ? p.N : 1.0;
    c.N = N;
    c.DN_plus = 2.0 * std::pow(N, n - 2.0 * a) / (2.0 * a - n);
    c.DN_minus = 2.0 * std::pow(N, n - 2.0 * a + 1.0) / (n - 2.0 * a + 1.0);
    return c;
}

ChaosBound chaos_series_bound(const ChaosParams& p) {
    const int n = p.n;
    const double a = p.alpha;
    ChaosParams pc = p;
    pc.N = 1.0;
    const ChaosConstants c = chaos_constants(pc);
    // want x(N) = 2 C0 C2 D_N^+ = 1/4  =>  N = (16 C0 C2 / (2a-n))^{1/(2a-n)}
    const double g = 2.0 * a - n;
    const double N = std::pow(16.0 * c.C0 * c.C2 / g, 1.0 / g);
    if (!std::isfinite(N) || N > 1e12)
        throw std::runtime_error("chaos_series_bound: no admissible lambda split (alpha too "
                                 "close to n/2)");
    const double Neff = std::max(N, 1.0);
    const double DNp = 2.0 * std::pow(Neff, n - 2.0 * a) / g;
    const double DNm = 2.0 * std::pow(Neff, n - 2.0 * a + 1.0) / (n - 2.0 * a + 1.0);
    const double x = 2.0 * c.C0 * c.C2 * DNp;
    if (!(x < 0.5))
        throw std::runtime_error("chaos_series_bound: contraction not reached");
    ChaosBound b;
    b.N_chosen = Neff;
    b.contraction = x;
    b.bound = std::exp(2.0 * c.C0 * c.C1 * DNm * p.t) / (1.0 - x);
    return b;
}

namespace {

// I(eps, L) = 2 sum_m (2|m|+n)^{-(2a+1)} \int_eps^L l^{n-2a-1}(1 - e^{-8 l (2|m|+n)}) dl
double m1_integral(int n, double alpha, double eps, double L, long m_terms) {
    double total = 0.0;
    const int panels = 64;
    for (long M = 0; M < m_terms; ++M) {
        const double cnt = static_cast<double>(multi_index_count(n, M));
        const double c = 2.0 * M + n;
        double integral = 0.0;
        const double le = std::log(eps), ll = std::log(L);
        for (int p = 0; p < panels; ++p) {
            const double a0 = std::exp(le + (ll - le) * p / panels);
            const double b0 = std::exp(le + (ll - le) * (p + 1) / panels);
            integral += gl_integrate(
                [&](double l) {
                    return std::pow(l, n - 2.0 * alpha - 1.0) * (1.0 - std::exp(-8.0 * l * c));
                },
                a0, b0, 8);
        }
        const double term = cnt * std::pow(c, -(2.0 * alpha + 1.0)) * integral;
        total += term;
        if (M > 8 && term < 1e-12 * total) break;
    }
    return 2.0 * total;
}

}  // namespace

NecessityReport necessity_probe(int n, double alpha, int doublings) {
    NecessityReport rep;
    const double eps0 = 1e-2, L0 = 30.0;
    const long m_terms = 4000;

    std::vector<double> vals;
    for (int k = 0; k <= doublings; ++k)
        vals.push_back(
            m1_integral(n, alpha, eps0 * std::pow(4.0, -k), L0 * std::pow(4.0, k), m_terms));
    const double last = vals[vals.size() - 1], prev = vals[vals.size() - 2];
    rep.converged = std::fabs(last - prev) <= 1e-4 * std::fabs(last);
    rep.value = last;
    if (!rep.converged) {
        // separate the two cutoff directions
        std::vector<double> ve, vl;
        for (int k = 0; k <= doublings; ++k) {
            ve.push_back(m1_integral(n, alpha, eps0 * std::pow(4.0, -k), L0, m_terms));
            vl.push_back(m1_integral(n, alpha, eps0, L0 * std::pow(4.0, k), m_terms));
        }
        auto fit_side = [&](const std::vector<double>& v, bool growing_cutoff) {
            // increments d_k = v_{k+1} - v_k ~ c * 4^{p k}; p recovered from ratios
            std::vector<double> lr;
            for (std::size_t k = 0; k + 2 < v.size(); ++k) {
                const double d1 = v[k + 1] - v[k], d2 = v[k + 2] - v[k + 1];
                if (d1 > 0 && d2 > 0) lr.push_back(std::log(d2 / d1) / std::log(4.0));
            }
            if (lr.empty()) return 0.0;
            double m = 0.0;
            for (double x : lr) m += x;
            m /= static_cast<double>(lr.size());
            return growing_cutoff ? m : -m;  // eps side: exponent of eps, negative = divergent
        };
        rep.exponent_eps = fit_side(ve, false);
        rep.exponent_lambda = fit_side(vl, true);
        rep.divergent_small = rep.exponent_eps < -0.02;
        rep.divergent_large = rep.exponent_lambda > 0.02;
    }
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

// capped kernel: min(G_{2a}, mollified) inside the switch radius, exact outside
struct CappedKernel {
    const GreenTable* exact;
    const GreenTable* moll;
    double r0;
    long* clip_count = nullptr;
    double operator()(const h1::Pt& d) const {
        const double N = h1::gauge(d);
        const double ge = N > 0 ? exact->value(d) : std::numeric_limits<double>::infinity();
        if (moll == nullptr || N >= r0) return ge;
        const double gm = moll->value(d);
        if (gm < ge && clip_count) ++(*clip_count);
        return std::min(ge, gm);
    }
};

}  // namespace

FkResult fk_second_moment(double alpha, double t, long samples, long steps,
                          double mollify_eps, Rng& rng, double c, const GroupPoint* start) {
    if (!(alpha > 0.5) || !(alpha < 1.0))
        throw std::domain_error("fk_second_moment: need n/2 < alpha < (n+1)/2 (n = 1)");
    if (samples < 100) throw std::invalid_argument("fk_second_moment: samples >= 100");
    const GreenTable& Ge = GreenTable::get(2.0 * alpha, 0.0);
    const GreenTable* Gm1 = mollify_eps > 0 ? &GreenTable::get(2.0 * alpha, mollify_eps) : nullptr;
    const GreenTable* Gm2 =
        mollify_eps > 0 ? &GreenTable::get(2.0 * alpha, 0.5 * mollify_eps) : nullptr;
    FkResult out;
    CappedKernel k1{&Ge, Gm1, 8.0 * std::sqrt(std::max(mollify_eps, 1e-300)),
                    &out.clipped_steps};
    CappedKernel k2{&Ge, Gm2, 8.0 * std::sqrt(std::max(0.5 * mollify_eps, 1e-300)), nullptr};
    out.kernel_cap = Gm1 ? Gm1->value_rz(0, 0) : std::numeric_limits<double>::infinity();

    h1::Pt x0{0, 0, 0};
    if (start) x0 = h1::Pt{start->x[0], start->y[0], start->z};

    const double dt = t / static_cast<double>(steps);
    const double sd = std::sqrt(dt);
    std::vector<double> S1(static_cast<std::size_t>(samples), 0.0), S2 = S1;
    for (long i = 0; i < samples; ++i) {
        h1::Pt b = x0, bt = x0;
        double s1 = 0.0, s2 = 0.0;
        for (long kstep = 0; kstep < steps; ++kstep) {
            const h1::Pt d = h1::diff(b, bt);
            s1 += k1(d) * dt;
            s2 += k2(d) * dt;
            {
                const double dx = sd * rng.normal(), dy = sd * rng.normal();
                b.z += 2.0 * (b.x * dy - b.y * dx);
                b.x += dx;
                b.y += dy;
            }
            {
                const double dx = sd * rng.normal(), dy = sd * rng.normal();
                bt.z += 2.0 * (bt.x * dy - bt.y * dx);
                bt.x += dx;
                bt.y += dy;
            }
        }
        S1[static_cast<std::size_t>(i)] = c * s1;
        S2[static_cast<std::size_t>(i)] = c * s2;
    }
    out.at_eps = exp_mean_lse(S1);
    out.at_eps_half = exp_mean_lse(S2);
    return out;
}

SmoothMomentResult smooth_regime_moment(double alpha, double beta, double t, long samples,
                                        long steps, Rng& rng) {
    if (!(alpha > 1.0) || !(alpha < 1.5))
        throw std::domain_error("smooth_regime_moment: function regime required (n = 1)");
    const double expo = 4.0 * alpha - 4.0;  // 4a - 2(n+1), n = 1
    const double dt = t / static_cast<double>(steps);
    const double sd = std::sqrt(dt);
    std::vector<double> S(static_cast<std::size_t>(samples), 0.0);
    for (long i = 0; i < samples; ++i) {
        h1::Pt b{0, 0, 0};
        double s = 0.0;
        for (long k = 0; k < steps; ++k) {
            s += beta * std::pow(h1::gauge(b), expo) * dt;
            const double dx = sd * rng.normal(), dy = sd * rng.normal();
            b.z += 2.0 * (b.x * dy - b.y * dx);
            b.x += dx;
            b.y += dy;
        }
        S[static_cast<std::size_t>(i)] = s;
    }
    SmoothMomentResult res;
    res.estimate = exp_mean_lse(S);
    const double g = 2.0 * alpha - 1.0;  // 2a - n
    res.rho = g / (2.0 - g);
    return res;
}

// ---------------------------------------------------------------------------

MildResult mild_solver_mollified(double alpha, double t, const MildLatticeSpec& lat,
                                 int time_steps, int realizations, double mollify_eps,
                                 Rng& rng, double c) {
    if (!(alpha > 0.5) || !(alpha < 1.0))
        throw std::domain_error("mild_solver_mollified: need n/2 < alpha < (n+1)/2 (n = 1)");
    if (!(mollify_eps > 0.0))
        throw std::invalid_argument("mild_solver_mollified: mollify_eps must be > 0");
    const int nx = lat.nxy, nz = lat.nz;
    const long M = static_cast<long>(nx) * nx * nz;
    std::vector<h1::Pt> pts(static_cast<std::size_t>(M));
    const double hx = 2.0 * lat.Lxy / (nx - 1), hz = 2.0 * lat.Lz / (nz - 1);
    {
        long idx = 0;
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < nx; ++j)
                for (int k = 0; k < nz; ++k)
                    pts[static_cast<std::size_t>(idx++)] =
                        h1::Pt{-lat.Lxy + i * hx, -lat.Lxy + j * hx, -lat.Lz + k * hz};
    }
    long center = 0;
    {
        double best = 1e300;
        for (long i = 0; i < M; ++i) {
            const double g = h1::gauge(pts[static_cast<std::size_t>(i)]);
            if (g < best) {
                best = g;
                center = i;
            }
        }
    }

    const double dt = t / time_steps;
    const HeatKernelTable& P = HeatKernelTable::instance();

    // sparse propagator rows: cell-integrated kernel, row-normalized
    auto build_sparse = [&](double tau) {
        std::vector<std::vector<std::pair<long, double>>> rows(
            static_cast<std::size_t>(M));
        const QuadRule& g3 = gauss_legendre(3);
        for (long i = 0; i < M; ++i) {
            double rowsum = 0.0;
            auto& row = rows[static_cast<std::size_t>(i)];
            for (long j = 0; j < M; ++j) {
                // cell-integrated kernel value p_tau(x_i^{-1} q), q over cell j
                double acc = 0.0;
                for (std::size_t a = 0; a < g3.nodes.size(); ++a)
                    for (std::size_t b = 0; b < g3.nodes.size(); ++b)
                        for (std::size_t d = 0; d < g3.nodes.size(); ++d) {
                            const h1::Pt q{
                                pts[static_cast<std::size_t>(j)].x + 0.5 * hx * g3.nodes[a],
                                pts[static_cast<std::size_t>(j)].y + 0.5 * hx * g3.nodes[b],
                                pts[static_cast<std::size_t>(j)].z + 0.5 * hz * g3.nodes[d]};
                            const h1::Pt df = h1::diff(pts[static_cast<std::size_t>(i)], q);
                            acc += g3.weights[a] * g3.weights[b] * g3.weights[d] *
                                   P.density(tau, std::sqrt(df.x * df.x + df.y * df.y),
                                             df.z);
                        }
                acc *= 0.125;  // GL weights on [-1,1]^3 sum to 8
                const double v = acc * hx * hx * hz;
                if (v > 1e-12) {
                    row.emplace_back(j, v);
                    rowsum += v;
                }
            }
            for (auto& e : row) e.second /= rowsum;
        }
        return rows;
    };
    const auto P_full = build_sparse(dt);
    const auto P_half = build_sparse(0.5 * dt);

    // noise covariance: dt * (e^{eps Delta} G_{2 alpha})(x_i^{-1} x_j), Cholesky
    const GreenTable& Gm = GreenTable::get(2.0 * alpha, mollify_eps);
    std::vector<double> L(static_cast<std::size_t>(M) * M, 0.0);
    MildResult out;
    {
        std::vector<double> gram(static_cast<std::size_t>(M) * M);
        for (long i = 0; i < M; ++i)
            for (long j = 0; j < M; ++j)
                gram[static_cast<std::size_t>(i) * M + j] = Gm.value(
                    h1::diff(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]));
        double trace = 0.0;
        for (long i = 0; i < M; ++i) trace += gram[static_cast<std::size_t>(i) * M + i];
        double jitter = 1e-10 * trace / M;
        for (int attempt = 0; attempt < 12; ++attempt) {
            std::vector<double> A = gram;
            for (long i = 0; i < M; ++i) A[static_cast<std::size_t>(i) * M + i] += jitter;
            bool ok = true;
            std::fill(L.begin(), L.end(), 0.0);
            for (long i = 0; i < M && ok; ++i) {
                for (long j = 0; j <= i; ++j) {
                    double s = A[static_cast<std::size_t>(i) * M + j];
                    for (long p = 0; p < j; ++p)
                        s -= L[static_cast<std::size_t>(i) * M + p] *
                             L[static_cast<std::size_t>(j) * M + p];
                    if (i == j) {
                        if (s <= 0.0) {
                            ok = false;
                            break;
                        }
                        L[static_cast<std::size_t>(i) * M + i] = std::sqrt(s);
                    } else {
                        L[static_cast<std::size_t>(i) * M + j] =
                            s / L[static_cast<std::size_t>(j) * M + j];
                    }
                }
            }
            if (ok) break;
            jitter *= 10.0;
            if (attempt == 11)
                throw std::runtime_error("mild_solver: noise covariance not PSD");
        }
        out.gram_jitter = jitter;
    }

    std::vector<double> u2(static_cast<std::size_t>(realizations)),
        u1(static_cast<std::size_t>(realizations));
    std::vector<double> u(static_cast<std::size_t>(M)), xi(static_cast<std::size_t>(M)),
        dW(static_cast<std::size_t>(M)), tmp(static_cast<std::size_t>(M)),
        kicked(static_cast<std::size_t>(M));
    const double noise_scale = std::sqrt(c * dt);
    for (int rep = 0; rep < realizations; ++rep) {
        std::fill(u.begin(), u.end(), 1.0);
        for (int k = 0; k < time_steps; ++k) {
            for (auto& v : xi) v = rng.normal();
            // dW = noise_scale * L xi  (lower-triangular)
            for (long i = 0; i < M; ++i) {
                double s = 0.0;
                const double* Li = &L[static_cast<std::size_t>(i) * M];
                for (long j = 0; j <= i; ++j) s += Li[j] * xi[static_cast<std::size_t>(j)];
                dW[static_cast<std::size_t>(i)] = noise_scale * s;
            }
            for (long i = 0; i < M; ++i)
                kicked[static_cast<std::size_t>(i)] =
                    u[static_cast<std::size_t>(i)] * dW[static_cast<std::size_t>(i)];
            for (long i = 0; i < M; ++i) {
                double a = 0.0;
                for (const auto& e : P_full[static_cast<std::size_t>(i)])
                    a += e.second * u[static_cast<std::size_t>(e.first)];
                double bnoise = 0.0;
                for (const auto& e : P_half[static_cast<std::size_t>(i)])
                    bnoise += e.second * kicked[static_cast<std::size_t>(e.first)];
                tmp[static_cast<std::size_t>(i)] = a + bnoise;
            }
            u.swap(tmp);
            double mx = 0.0;
            for (double v : u) mx = std::max(mx, std::fabs(v));
            if (mx > 1e6) {
                out.blowup = true;
                break;
            }
        }
        u1[static_cast<std::size_t>(rep)] = u[static_cast<std::size_t>(center)];
        u2[static_cast<std::size_t>(rep)] =
            u[static_cast<std::size_t>(center)] * u[static_cast<std::size_t>(center)];
        if (out.blowup) break;
    }
    out.second_moment = mean_se(u2);
    out.mean = mean_se(u1);
    out.field = u;
    return out;
}

// ---------------------------------------------------------------------------

Order1Chaos chaos_order1_variance(double alpha, double t) {
    if (!(alpha > 0.5) || !(alpha < 1.0))
        throw std::domain_error("chaos_order1_variance: need n/2 < alpha < (n+1)/2 (n = 1)");
    Order1Chaos out;

    // direct route: V = \int_0^t [\int G_{2a}(e,w) p_{2 tau}(w) dmu(w)] d tau
    const GreenTable& G = GreenTable::get(2.0 * alpha, 0.0);
    const HeatKernelTable& P = HeatKernelTable::instance();
    auto inner = [&](double tau) {
        return radial_integral(
            [&](double r, double z) {
                return G.value_rz(r, z) * P.density(2.0 * tau, r, z);
            },
            1e-4 * std::sqrt(tau), 30.0 * std::sqrt(tau) + 5.0, 64, 24);
    };
    // integrand ~ tau^{2a - 3/2}... wait: inner(tau) ~ c tau^{alpha - ...}; integrate on log panels
    {
        const int panels = 40;
        const double tlo = 1e-6 * t;
        const double ll0 = std::log(tlo), ll1 = std::log(t);
        double acc = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double a0 = std::exp(ll0 + (ll1 - ll0) * p / panels);
            const double b0 = std::exp(ll0 + (ll1 - ll0) * (p + 1) / panels);
            acc += gl_integrate(inner, a0, b0, 8);
        }
        // [0, tlo] head from the tau^{(2a-1)-1/2 ...} scaling: inner ~ C tau^{a_h}
        const double v1 = inner(tlo), v2 = inner(2.0 * tlo);
        const double ah = std::log2(v2 / v1);
        acc += v1 * tlo / (ah + 1.0);
        out.direct = acc;
    }

    // Ito-isometry route through the heat multiplier of the Gaveau kernel
    // (e^{(tau/2) Delta}): |fhat|^2 has e^{-4 tau |l| (2m+1)}.
    // V = 2 C0 16^{-a} sum_m (2m+1)^{-2a} \int_0^t \int_0^inf l^{1-2a}
    //       e^{-4 tau l (2m+1)} dl dtau, with both integrals closed:
    // \int_0^t e^{-4 tau l c} dtau = (1-e^{-4 t l c})/(4 l c),
    // \int_0^inf l^{-2a}(1-e^{-b l}) dl = b^{2a-1} Gamma(2-2a)/(2a-1).
    {
        const double C0 = 1.0 / (M_PI * M_PI);
        const double s2a = 2.0 * alpha;
        double msum = 0.0;
        for (long m = 0; m < 4000000; ++m) {
            const double cc = 2.0 * m + 1.0;
            const double term = std::pow(cc, -s2a - 1.0) * std::pow(4.0 * t * cc, s2a - 1.0);
            msum += term;
            if (m > 16 && term < 1e-14 * msum) break;
        }
        out.spectral = 2.0 * C0 * std::pow(16.0, -alpha) * 0.25 *
                       std::tgamma(2.0 - s2a) / (s2a - 1.0) * msum;
    }
    return out;
}

}  // namespace heispam
