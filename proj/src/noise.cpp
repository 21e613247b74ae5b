#include "heispam/noise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace heispam {

namespace {

std::vector<double> affine_center_matrix(const GroupPoint& c, bool left_factor) {
    // coords(c^{-1} q) when left_factor=false: rows for (x', y', z')
    //   z' = qz - cz + 2 (cx qy - cy qx)
    // coords(c q) when left_factor=true:
    //   z' = qz + cz + 2 (cy qx - cx qy)
    const double cx = c.x[0], cy = c.y[0];
    if (!left_factor)
        return {1, 0, 0, 0, 1, 0, -2.0 * cy, 2.0 * cx, 1};
    return {1, 0, 0, 0, 1, 0, 2.0 * cy, -2.0 * cx, 1};
}

}  // namespace

TestFunction::TestFunction(const GroupPoint& center, double width, double amplitude,
                           double t0, double t1) {
    if (center.dim() != 1) throw std::invalid_argument("TestFunction: n = 1 only");
    if (!(width > 0.0)) throw std::invalid_argument("TestFunction: width must be > 0");
    if (!(t1 > t0)) throw std::invalid_argument("TestFunction: empty time support");
    const std::vector<double> M = affine_center_matrix(center, false);
    const std::vector<double> m0 = {-center.x[0], -center.y[0], -center.z};
    form_ = GaussianForm::squared_affine(M, m0, width);
    amplitude_ = amplitude;
    t0_ = t0;
    t1_ = t1;
    width_ = width;
    centered_ = center.x[0] == 0.0 && center.y[0] == 0.0 && center.z == 0.0;
}

TestFunction TestFunction::composed_with_dilation(double lambda) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilation: lambda > 0");
    TestFunction f = *this;
    const std::vector<double> M = {lambda, 0, 0, 0, lambda, 0, 0, 0, lambda * lambda};
    f.form_ = form_.substitute(M, {0, 0, 0});
    // centered bumps stay centered (widths shrink by lambda / lambda^2)
    f.width_ = width_ / lambda;
    return f;
}

TestFunction TestFunction::composed_with_translation(const GroupPoint& g) const {
    TestFunction f = *this;
    const std::vector<double> M = affine_center_matrix(g, true);
    f.form_ = form_.substitute(M, {g.x[0], g.y[0], g.z});
    f.centered_ = false;
    return f;
}

TestFunction TestFunction::composed_with_rotation(double theta) const {
    TestFunction f = *this;
    const double c = std::cos(theta), s = std::sin(theta);
    const std::vector<double> M = {c, s, 0, -s, c, 0, 0, 0, 1};
    f.form_ = form_.substitute(M, {0, 0, 0});
    return f;
}

double TestFunction::value(double t, const GroupPoint& q) const {
    if (t < t0_ || t > t1_) return 0.0;
    return spatial_value(h1::Pt{q.x[0], q.y[0], q.z});
}

double TestFunction::spatial_value(const h1::Pt& q) const {
    return amplitude_ * form_.eval({q.x, q.y, q.z});
}

double TestFunction::time_overlap(const TestFunction& o) const {
    return std::max(0.0, std::min(t1_, o.t1_) - std::max(t0_, o.t0_));
}

double TestFunction::spatial_mass() const { return amplitude_ * form_.integral(); }

double TestFunction::spatial_pair_integral(const TestFunction& a, const TestFunction& b) {
    return a.amplitude_ * b.amplitude_ * (a.form_ + b.form_).integral();
}

// ---------------------------------------------------------------------------

double covariance_quadrature(double alpha, const TestFunction& phi,
                             const TestFunction& psi) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("covariance_quadrature: need 0 < alpha < (n+1)/2, n = 1");
    const double T = phi.time_overlap(psi);
    if (T <= 0.0) return 0.0;
    const GreenTable& G = GreenTable::get(2.0 * alpha, 0.0);

    // g(w) = int phi(q) psi(q * w) dq : substitute q -> q*w in psi's exponent
    auto g_of_w = [&](const h1::Pt& w) {
        const std::vector<double> M = {1, 0, 0, 0, 1, 0, -2.0 * w.y, 2.0 * w.x, 1};
        const std::vector<double> m0 = {w.x, w.y, w.z};
        const GaussianForm total = phi.exponent() + psi.exponent().substitute(M, m0);
        return phi.amplitude() * psi.amplitude() * total.integral();
    };

    // scale hint from the combined spread: sample the integrand support
    // conservatively around the widths.
    const double S = 2.0 * (phi.width() + psi.width()) + 1.0;

    const int n_rho = 72, n_u = 20, n_th = 24;
    const QuadRule& gu = gauss_legendre(n_u);
    const QuadRule& gr = gauss_legendre(8);
    std::vector<double> edges(n_rho + 1);
    const double l0 = std::log(1e-4 * S), l1 = std::log(40.0 * S);
    for (int i = 0; i <= n_rho; ++i)
        edges[static_cast<std::size_t>(i)] = std::exp(l0 + (l1 - l0) * i / n_rho);

    double total = 0.0;
    for (int p = 0; p < n_rho; ++p) {
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
                const double Gv = G.value_rz(rr, zz * zz);
                for (int ith = 0; ith < n_th; ++ith) {
                    const double th = (ith + 0.5) * 2.0 * M_PI / n_th;
                    for (double sgn : {1.0, -1.0}) {
                        const h1::Pt w{rr * std::cos(th), rr * std::sin(th),
                                       sgn * zz * zz};
                        total += wr * wu * (2.0 * M_PI / n_th) * jac * Gv * g_of_w(w);
                    }
                }
            }
        }
    }
    return T * total;
}

// ---------------------------------------------------------------------------

namespace {

struct CenteredBump {
    double amp, wr, wz;
};

// centered bumps in this class are axis-aligned Gaussians; read the widths
// off the exponent diagonal.
CenteredBump centered_params(const TestFunction& f) {
    if (!f.centered())
        throw std::invalid_argument("covariance_spectral: requires bumps centered at e");
    const GaussianForm& g = f.exponent();
    const double hx = g.H[0], hz = g.H[8];
    return {f.amplitude(), 1.0 / std::sqrt(hx), 1.0 / std::sqrt(hz)};
}

double zeta_odd(double s) {
    // sum_{m>=0} (2m+1)^{-s} = (1 - 2^{-s}) zeta(s)
    return (1.0 - std::pow(2.0, -s)) * std::riemann_zeta(s);
}

}  // namespace

SpectralCovResult covariance_spectral(double alpha, const TestFunction& phi,
                                      const TestFunction& psi,
                                      const SpectralTruncation& trunc, double rel_tol) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("covariance_spectral: need 0 < alpha < (n+1)/2, n = 1");
    const CenteredBump b1 = centered_params(phi), b2 = centered_params(psi);
    const double T = phi.time_overlap(psi);
    const double C0 = 1.0 / (M_PI * M_PI);
    const double s2a = 2.0 * alpha;

    // radial nodes shared by both bumps
    const double rmaxq = 6.0 * std::max(b1.wr, b2.wr);
    const int n_r = 48;
    const QuadRule& glr = gauss_legendre(n_r);

    auto S_of_lambda = [&](double lam, int m_cap) {
        lam = std::fabs(lam);
        // adaptive m cut from the analytic geometric decay of Gaussian bumps
        const double ww = std::min(b1.wr, b2.wr);
        double mc_d = 40.0 / std::max(8.0 * ww * ww * lam, 1e-9) + 64.0;
        const int m_cut = std::min(m_cap, static_cast<int>(std::min(mc_d, 1e7)));
        std::vector<double> f1(static_cast<std::size_t>(m_cut) + 1, 0.0), f2 = f1;
        std::vector<std::complex<double>> ray;
        for (std::size_t a = 0; a < glr.nodes.size(); ++a) {
            const double r = 0.5 * rmaxq * (glr.nodes[a] + 1.0);
            const double w = 0.5 * rmaxq * glr.weights[a];
            matrix_coefficient_ray_diag(r, lam, m_cut, ray);
            const double g1 = std::exp(-r * r / (2.0 * b1.wr * b1.wr));
            const double g2 = std::exp(-r * r / (2.0 * b2.wr * b2.wr));
            for (int m = 0; m <= m_cut; ++m) {
                const double e = ray[static_cast<std::size_t>(m)].real();
                f1[static_cast<std::size_t>(m)] += w * 2.0 * M_PI * r * g1 * e;
                f2[static_cast<std::size_t>(m)] += w * 2.0 * M_PI * r * g2 * e;
            }
        }
        const double z1 = b1.amp * std::sqrt(2.0 * M_PI) * b1.wz *
                          std::exp(-lam * lam * b1.wz * b1.wz / 2.0);
        const double z2 = b2.amp * std::sqrt(2.0 * M_PI) * b2.wz *
                          std::exp(-lam * lam * b2.wz * b2.wz / 2.0);
        double head = 0.0;
        for (int m = 0; m <= m_cut; ++m)
            head += std::pow(2.0 * m + 1.0, -s2a) * f1[static_cast<std::size_t>(m)] *
                    f2[static_cast<std::size_t>(m)];
        // scalar geometric tail from the last computed ratio
        double tail = 0.0;
        if (m_cut >= 2) {
            const double pm = f1[static_cast<std::size_t>(m_cut)] *
                              f2[static_cast<std::size_t>(m_cut)];
            const double pm1 = f1[static_cast<std::size_t>(m_cut) - 1] *
                               f2[static_cast<std::size_t>(m_cut) - 1];
            double x = pm1 != 0.0 ? pm / pm1 : 0.0;
            if (x > 0.0 && x < 0.999999) {
                double term = pm;
                for (long j = 1; j < 20000000; ++j) {
                    term *= x;
                    const double contrib =
                        std::pow(2.0 * (m_cut + j) + 1.0, -s2a) * term;
                    tail += contrib;
                    if (std::fabs(contrib) < 1e-15 * (std::fabs(head) + 1e-300)) break;
                }
            }
        }
        return (head + tail) * z1 * z2;
    };

    auto assemble = [&](int m_cap) {
        double grid_part = 0.0;
        double lam_min = 1e300;
        for (std::size_t i = 0; i < trunc.lambdas.size(); ++i) {
            const double lam = trunc.lambdas[i];
            if (lam <= 0.0) continue;  // even in lambda: use the + side twice
            lam_min = std::min(lam_min, lam);
            grid_part += 2.0 * trunc.weights[i] * std::pow(lam, -s2a) *
                         S_of_lambda(lam, m_cap) * std::pow(16.0, -alpha);
        }
        // analytic [0, lam_min] part at the lambda -> 0 limit of S
        const double F1 = b1.amp * std::pow(2.0 * M_PI, 1.5) * b1.wr * b1.wr * b1.wz;
        const double F2 = b2.amp * std::pow(2.0 * M_PI, 1.5) * b2.wr * b2.wr * b2.wz;
        const double S0 = F1 * F2 * zeta_odd(s2a);
        const double chunk = 2.0 * std::pow(16.0, -alpha) * S0 *
                             std::pow(lam_min, 2.0 - s2a) / (2.0 - s2a);
        return C0 * (grid_part + chunk);
    };

    SpectralCovResult res;
    const double full = assemble(trunc.m_max);
    const double half = assemble(std::max(8, trunc.m_max / 2));
    res.value = T * full;
    res.truncation_flag = std::fabs(full - half) > rel_tol * std::fabs(full);
    return res;
}

GaussianFamilySampler::GaussianFamilySampler(double alpha,
                                             const std::vector<TestFunction>& phis,
                                             const SpectralTruncation& trunc)
    : k_(phis.size()) {
    gram_.assign(k_ * k_, 0.0);
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t j = i; j < k_; ++j) {
            const double v = covariance_spectral(alpha, phis[i], phis[j], trunc).value;
            gram_[i * k_ + j] = v;
            gram_[j * k_ + i] = v;
        }
    double trace = 0.0;
    for (std::size_t i = 0; i < k_; ++i) trace += gram_[i * k_ + i];
    const double ridge = 1e-10 * trace;
    std::vector<double> A = gram_;
    for (std::size_t i = 0; i < k_; ++i) A[i * k_ + i] += ridge;
    chol_.assign(k_ * k_, 0.0);
    for (std::size_t i = 0; i < k_; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = A[i * k_ + j];
            for (std::size_t p = 0; p < j; ++p) s -= chol_[i * k_ + p] * chol_[j * k_ + p];
            if (i == j) {
                if (s <= 0.0)
                    throw std::runtime_error(
                        "sample_distributional: covariance not PSD beyond regularization "
                        "(truncation inconsistency)");
                chol_[i * k_ + i] = std::sqrt(s);
            } else {
                chol_[i * k_ + j] = s / chol_[j * k_ + j];
            }
        }
    }
}

std::vector<double> GaussianFamilySampler::sample(Rng& rng) const {
    std::vector<double> xi(k_), out(k_, 0.0);
    for (auto& v : xi) v = rng.normal();
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t j = 0; j <= i; ++j) out[i] += chol_[i * k_ + j] * xi[j];
    return out;
}

std::vector<double> sample_distributional(double alpha,
                                          const std::vector<TestFunction>& phis,
                                          const SpectralTruncation& trunc, Rng& rng) {
    const GaussianFamilySampler sampler(alpha, phis, trunc);
    return sampler.sample(rng);
}

// ---------------------------------------------------------------------------

PolarLattice PolarLattice::make(double scale, int n_rho, int n_u, int n_theta,
                                double rho_min_fac, double rho_max_fac) {
    PolarLattice lat;
    lat.rho_min = rho_min_fac * scale;
    lat.rho_max = rho_max_fac * scale;
    std::vector<double> redges(static_cast<std::size_t>(n_rho) + 1);
    const double l0 = std::log(lat.rho_min), l1 = std::log(lat.rho_max);
    for (int i = 0; i <= n_rho; ++i)
        redges[static_cast<std::size_t>(i)] = std::exp(l0 + (l1 - l0) * i / n_rho);
    lat.centers.reserve(static_cast<std::size_t>(n_rho) * n_u * n_theta * 2);
    lat.measure.reserve(lat.centers.capacity());
    for (int i = 0; i < n_rho; ++i) {
        const double r0 = redges[static_cast<std::size_t>(i)];
        const double r1 = redges[static_cast<std::size_t>(i) + 1];
        const double rc = std::sqrt(r0 * r1);
        const double mrho = (r1 * r1 * r1 * r1 - r0 * r0 * r0 * r0) / 4.0;
        for (int j = 0; j < n_u; ++j) {
            const double u0 = static_cast<double>(j) / n_u;
            const double u1 = static_cast<double>(j + 1) / n_u;
            const double uc = 0.5 * (u0 + u1);
            const double muu = (u1 * u1 / 2 - u1 * u1 * u1 / 3) -
                               (u0 * u0 / 2 - u0 * u0 * u0 / 3);
            for (int kth = 0; kth < n_theta; ++kth) {
                const double th = (kth + 0.5) * 2.0 * M_PI / n_theta;
                for (double sgn : {1.0, -1.0}) {
                    lat.centers.push_back(h1::Pt{rc * uc * std::cos(th),
                                                 rc * uc * std::sin(th),
                                                 sgn * rc * rc * (1 - uc) * (1 - uc)});
                    lat.measure.push_back(2.0 * mrho * muu * (2.0 * M_PI / n_theta));
                }
            }
        }
    }
    return lat;
}

FieldRealization sample_pointwise(double alpha, double t,
                                  const std::vector<GroupPoint>& points,
                                  const PolarLattice& lattice, Rng& rng,
                                  std::uint64_t seed_label) {
    if (!(alpha > 1.0) || !(alpha < 1.5))
        throw std::domain_error("sample_pointwise: function regime required (n = 1)");
    const GreenTable& G = GreenTable::get(alpha, 0.0);
    const std::size_t nc = lattice.centers.size();
    std::vector<double> xi(nc);
    for (auto& v : xi) v = rng.normal();

    FieldRealization out;
    out.alpha = alpha;
    out.seed = seed_label;
    std::ostringstream meta;
    meta << "polar-cells=" << nc << " rho_min=" << lattice.rho_min
         << " rho_max=" << lattice.rho_max;
    out.lattice_meta = meta.str();
    const double st = std::sqrt(t);
    for (const auto& p : points) {
        if (p.dim() != 1) throw std::invalid_argument("sample_pointwise: n = 1 only");
        const h1::Pt x{p.x[0], p.y[0], p.z};
        if (h1::gauge(x) > lattice.rho_max / 50.0) out.truncation_flag = true;
        double acc = 0.0;
        for (std::size_t c = 0; c < nc; ++c) {
            const h1::Pt& ctr = lattice.centers[c];
            const double gx = G.value(h1::diff(x, ctr));
            const double ge = G.value(ctr);
            acc += (gx - ge) * std::sqrt(lattice.measure[c]) * xi[c];
        }
        out.times.push_back(t);
        out.points.push_back(p);
        out.values.push_back(st * acc);
    }
    return out;
}

std::string FieldRealization::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "# alpha=" << alpha << " seed=" << seed << " " << lattice_meta << "\n";
    os << "# t,x,y,z,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << times[i] << "," << points[i].x[0] << "," << points[i].y[0] << ","
           << points[i].z << "," << values[i] << "\n";
    return os.str();
}

std::string FieldRealization::to_json() const {
    nlohmann::ordered_json j;
    j["alpha"] = alpha;
    j["seed"] = seed;
    j["lattice"] = lattice_meta;
    j["truncation_flag"] = truncation_flag;
    auto& rows = j["rows"];
    for (std::size_t i = 0; i < values.size(); ++i)
        rows.push_back({times[i], points[i].x[0], points[i].y[0], points[i].z, values[i]});
    return j.dump(2);
}

HolderReport holder_slope(double alpha, double t, int pair_samples, Rng& rng) {
    if (!(alpha > 1.0) || !(alpha < 1.5))
        throw std::domain_error("holder_slope: function regime required (n = 1)");
    const int nbins = 12;
    const int per_bin = std::max(2, pair_samples / nbins);
    const int realizations = 32;
    const double d_lo = 0.06;
    if (pair_samples < nbins * 2)
        throw std::invalid_argument("holder_slope: too few pairs to span 1.5 decades");

    std::vector<double> logd, logv;
    for (int b = 0; b < nbins; ++b) {
        const double d = d_lo * std::pow(10.0, 1.5 * b / (nbins - 1.0));
        PolarLattice lat = PolarLattice::make(d, 40, 14, 14);
        std::vector<GroupPoint> pts;
        pts.reserve(static_cast<std::size_t>(per_bin));
        for (int p = 0; p < per_bin; ++p) {
            const double u = 0.15 + 0.7 * rng.uniform();
            const double th = 2.0 * M_PI * rng.uniform();
            const double sg = rng.uniform() < 0.5 ? 1.0 : -1.0;
            pts.emplace_back(d * u * std::cos(th), d * u * std::sin(th),
                             sg * d * d * (1 - u) * (1 - u));
        }
        std::vector<double> sq(pts.size(), 0.0);
        for (int r = 0; r < realizations; ++r) {
            FieldRealization f = sample_pointwise(alpha, t, pts, lat, rng);
            for (std::size_t i = 0; i < pts.size(); ++i)
                sq[i] += f.values[i] * f.values[i];
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double m = sq[i] / realizations;
            if (m > 0) {
                logd.push_back(std::log(gauge(pts[i])));
                logv.push_back(std::log(m));
            }
        }
    }
    const LinearFit fit = linear_fit(logd, logv);
    HolderReport rep;
    rep.slope = fit.slope;
    rep.expected = 2.0 * (2.0 * alpha - 2.0);
    rep.hurst = 2.0 * alpha - 2.0;
    rep.r_squared = fit.r_squared;
    rep.pairs = static_cast<int>(logd.size());
    return rep;
}

InvarianceReport pointwise_invariance_suite(double alpha, Rng& rng) {
    auto rnd_point = [&](double scale) {
        return GroupPoint(scale * (rng.uniform() - 0.5), scale * (rng.uniform() - 0.5),
                          scale * (rng.uniform() - 0.5));
    };
    const GroupPoint e = GroupPoint::identity(1);
    const GroupPoint x = rnd_point(1.2);
    const GroupPoint y = rnd_point(1.0);
    const GroupPoint z = rnd_point(1.4);
    const GroupPoint g = rnd_point(1.5);

    InvarianceReport rep;
    // dilation: Var(W(t, delta_2 x)) = 2^{2(2a-2)} Var(W(t, x))
    const double lam = rep.dilation_lambda;
    const double jx = increment_variance(alpha, x, e);
    const double jdx = increment_variance(alpha, dilate(Dilation(lam), x), e);
    const double expect = std::pow(lam, 2.0 * (2.0 * alpha - 2.0));
    rep.dilation_rel_err = std::fabs(jdx / jx / expect - 1.0);
    // rotation: Var(W(t, R x)) = Var(W(t, x))
    const double jrx = increment_variance(alpha, rotate(Rotation(0.7), x), e);
    rep.rotation_rel_err = std::fabs(jrx / jx - 1.0);
    // translation: Var(W(t, g y) - W(t, g z)) = Var(W(t, y) - W(t, z))
    const double jyz = increment_variance(alpha, y, z);
    const double jgyz =
        increment_variance(alpha, product(g, y), product(g, z));
    rep.translation_rel_err = std::fabs(jgyz / jyz - 1.0);
    return rep;
}

}  // namespace heispam
