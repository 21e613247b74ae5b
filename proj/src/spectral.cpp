#include "heispam/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace heispam {

SpectralTruncation make_log_truncation(int n, int m_max, double lam_min, double lam_max,
                                       int per_side) {
    if (!(lam_min > 0.0) || !(lam_max > lam_min) || per_side < 2 || m_max < 0)
        throw std::invalid_argument("make_log_truncation: bad arguments");
    SpectralTruncation tr;
    tr.m_max = m_max;
    std::vector<double> pos(per_side);
    const double l0 = std::log(lam_min), l1 = std::log(lam_max);
    for (int i = 0; i < per_side; ++i)
        pos[i] = std::exp(l0 + (l1 - l0) * i / (per_side - 1));
    // trapezoid in lambda on the log grid, times |lambda|^n
    for (int sgn : {-1, 1}) {
        for (int i = 0; i < per_side; ++i) {
            const double lam = pos[i];
            double h = 0.0;
            if (i > 0) h += 0.5 * (pos[i] - pos[i - 1]);
            if (i + 1 < per_side) h += 0.5 * (pos[i + 1] - pos[i]);
            tr.lambdas.push_back(sgn * lam);
            tr.weights.push_back(h * std::pow(lam, n));
        }
    }
    return tr;
}

void hermite_column(int kmax, double xi, std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(kmax) + 1);
    const double h0 = 0.7511255444649425 * std::exp(-0.5 * xi * xi);  // pi^{-1/4} e^{-x^2/2}
    out[0] = h0;
    if (kmax >= 1) out[1] = std::sqrt(2.0) * xi * h0;
    for (int k = 1; k < kmax; ++k)
        out[static_cast<std::size_t>(k) + 1] =
            std::sqrt(2.0 / (k + 1.0)) * xi * out[static_cast<std::size_t>(k)] -
            std::sqrt(k / (k + 1.0)) * out[static_cast<std::size_t>(k) - 1];
}

double hermite_value(const std::vector<int>& k, double lambda,
                     const std::vector<double>& xi) {
    if (k.size() != xi.size()) throw std::invalid_argument("hermite_value: dim mismatch");
    if (lambda == 0.0) throw std::invalid_argument("hermite_value: lambda must be nonzero");
    const double s = std::sqrt(std::fabs(lambda));
    double v = 1.0;
    std::vector<double> col;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] < 0 || k[i] > 4000) throw std::invalid_argument("hermite_value: bad index");
        hermite_column(k[i], s * xi[i], col);
        v *= std::sqrt(s) * col[static_cast<std::size_t>(k[i])];
    }
    return v;
}

double heat_multiplier(double t, const SpectralIndex& idx, SemigroupConvention conv) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat_multiplier: t must be >= 0");
    if (!idx.diagonal()) return 0.0;
    const double tau = conv == SemigroupConvention::full_delta ? t : 0.5 * t;
    return std::exp(-4.0 * tau * std::fabs(idx.lambda) * (2.0 * idx.abs_m() + idx.n()));
}

double frac_multiplier(double alpha, const SpectralIndex& idx) {
    if (idx.lambda == 0.0) throw std::invalid_argument("frac_multiplier: lambda = 0");
    return std::pow(4.0, -alpha) * std::pow(std::fabs(idx.lambda), -alpha) *
           std::pow(2.0 * idx.abs_m() + idx.n(), -alpha);
}

double sobolev_norm(const std::vector<SpectralCoeff>& coeffs, double alpha,
                    const SpectralTruncation& trunc) {
    double total = 0.0;
    for (const auto& c : coeffs) {
        // locate the lambda on the grid
        double w = -1.0;
        for (std::size_t i = 0; i < trunc.lambdas.size(); ++i) {
            if (std::fabs(trunc.lambdas[i] - c.idx.lambda) <=
                1e-12 * std::max(1.0, std::fabs(c.idx.lambda))) {
                w = trunc.weights[i];
                break;
            }
        }
        if (w < 0.0)
            throw std::invalid_argument("sobolev_norm: coefficient lambda off the grid");
        if (c.idx.abs_m() > trunc.m_max)
            throw std::invalid_argument("sobolev_norm: coefficient outside truncation");
        const double f = frac_multiplier(alpha, c.idx);
        total += f * f * std::norm(c.value) * w;
    }
    return total;
}

namespace {
int node_count_for(int m_max, double lambda, double x, int min_nodes) {
    const double s = std::sqrt(std::fabs(lambda));
    // oscillation e^{-2 i lambda x eta / s}: frequency c = 2 |lambda| |x| / s = 2 s |x|
    const double c = 2.0 * s * std::fabs(x);
    const double range = std::sqrt(2.0 * m_max + 1.0) + 4.0;
    const int osc = static_cast<int>(c * range);
    int nodes = std::max(min_nodes, m_max + 40 + 2 * osc);
    return std::min(nodes, 3000);
}
}  // namespace

void matrix_coefficient_block(const GroupPoint& q, double lambda, int m_max,
                              std::vector<std::complex<double>>& out, int min_nodes) {
    if (q.dim() != 1)
        throw std::invalid_argument("matrix_coefficient: n = 1 supported");
    if (lambda == 0.0) throw std::invalid_argument("matrix_coefficient: lambda = 0");
    const double x = q.x[0], y = q.y[0], z = q.z;
    const double s = std::sqrt(std::fabs(lambda));
    const int nn = node_count_for(m_max, lambda, x, min_nodes);
    const QuadRule& gh = gauss_hermite(nn);

    const std::size_t M = static_cast<std::size_t>(m_max) + 1;
    out.assign(M * M, {0.0, 0.0});
    std::vector<double> hm, hl;
    const std::complex<double> zphase = std::exp(std::complex<double>(0.0, -lambda * z));
    for (std::size_t a = 0; a < gh.nodes.size(); ++a) {
        const double xn = gh.nodes[a];
        const double eta = xn + s * y;  // center the GH grid on the envelope peak
        hermite_column(m_max, eta - 2.0 * s * y, hm);
        hermite_column(m_max, eta, hl);
        // weight e^{xn^2} undoes the GH weight; the phase is exact
        const double w = gh.wexp[a];
        const double arg = -2.0 * lambda * x * (eta / s - y);
        const std::complex<double> ph = w * std::complex<double>(std::cos(arg), std::sin(arg));
        for (std::size_t m = 0; m < M; ++m) {
            const std::complex<double> hmp = hm[m] * ph;
            for (std::size_t l = 0; l < M; ++l) out[m * M + l] += hmp * hl[l];
        }
    }
    for (auto& v : out) v *= zphase;
}

void matrix_coefficient_ray_diag(double r, double lambda, int m_max,
                                 std::vector<std::complex<double>>& out, int min_nodes) {
    if (lambda == 0.0) throw std::invalid_argument("matrix_coefficient: lambda = 0");
    const double s = std::sqrt(std::fabs(lambda));
    const int nn = node_count_for(m_max, lambda, r, min_nodes);
    const QuadRule& gh = gauss_hermite(nn);
    const std::size_t M = static_cast<std::size_t>(m_max) + 1;
    out.assign(M, {0.0, 0.0});
    std::vector<double> h;
    for (std::size_t a = 0; a < gh.nodes.size(); ++a) {
        const double xn = gh.nodes[a];
        hermite_column(m_max, xn, h);
        const double w = gh.wexp[a];
        const double arg = -2.0 * lambda * r * xn / s;
        const std::complex<double> ph = w * std::complex<double>(std::cos(arg), std::sin(arg));
        for (std::size_t m = 0; m < M; ++m) out[m] += h[m] * h[m] * ph;
    }
}

std::complex<double> matrix_coefficient(const GroupPoint& q, const SpectralIndex& idx,
                                        int min_nodes) {
    if (idx.n() != 1 || q.dim() != 1)
        throw std::invalid_argument("matrix_coefficient: n = 1 supported");
    const int m = idx.m[0], l = idx.ell[0];
    if (m < 0 || l < 0) throw std::invalid_argument("matrix_coefficient: bad index");
    const int mm = std::max(m, l);
    std::vector<std::complex<double>> block;
    matrix_coefficient_block(q, idx.lambda, mm, block, min_nodes);
    return block[static_cast<std::size_t>(m) * (mm + 1) + l];
}

}  // namespace heispam
