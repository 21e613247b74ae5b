// Test-only oracles, independent of the library's evaluation paths.
#pragma once

#include <cmath>
#include <vector>

namespace oracles {

/// Closed form for the diagonal matrix coefficients on H^1:
/// e_q(m, m, lambda) = e^{-i lambda z} e^{-|lambda| r^2} L_m(2 |lambda| r^2),
/// via the stable scaled-Laguerre recurrence T_m = e^{-x/2} L_m(x).
inline std::vector<double> diag_coeff_laguerre(int m_max, double lambda, double r2) {
    const double x = 2.0 * std::fabs(lambda) * r2;
    std::vector<double> T(static_cast<std::size_t>(m_max) + 1);
    T[0] = std::exp(-0.5 * x);
    if (m_max >= 1) T[1] = (1.0 - x) * T[0];
    for (int k = 1; k < m_max; ++k)
        T[static_cast<std::size_t>(k) + 1] =
            ((2.0 * k + 1.0 - x) * T[static_cast<std::size_t>(k)] -
             k * T[static_cast<std::size_t>(k) - 1]) /
            (k + 1.0);
    return T;  // the e^{-i lambda z} phase is applied by the caller
}

/// fhat(m, m, lambda) for a centered isotropic Gaussian bump
/// A exp(-|q|^2/(2 w^2)) on H^1: exact closed form (log-scaled).
inline double fhat_gauss_closed(int m, double lambda, double w, double A = 1.0) {
    const double p = 1.0 / (2.0 * w * w) + std::fabs(lambda);
    const double q = 2.0 * std::fabs(lambda);
    const double zfac = std::sqrt(2.0 * M_PI) * w * std::exp(-lambda * lambda * w * w / 2.0);
    const double d = p - q;
    const double sign = d >= 0.0 ? 1.0 : (m % 2 ? -1.0 : 1.0);
    const double lv = m * std::log(std::fabs(d) + 1e-300) - (m + 1) * std::log(p);
    return A * zfac * M_PI * sign * std::exp(lv);
}

/// Spectral route for the squared L^2 increment of G_alpha (n = 1):
/// J(d) = C0 sum_m \int (4|l|(2m+1))^{-2a} (2 - 2 Re e_d(m,m,l)) |l| dl,
/// with the analytic large-lambda tail.
inline double increment_variance_spectral(double alpha, double dx, double dy, double dz,
                                          int m_max = 500, int n_lam = 900,
                                          double lam_max = 4000.0) {
    const double C0 = 1.0 / (M_PI * M_PI);
    const double r2 = dx * dx + dy * dy;
    const double s2a = 2.0 * alpha;
    double sum_cm = 0.0;
    std::vector<double> cm(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m) {
        cm[static_cast<std::size_t>(m)] = std::pow(2.0 * m + 1.0, -s2a);
        sum_cm += cm[static_cast<std::size_t>(m)];
    }
    const double l0 = std::log(1e-7), l1 = std::log(lam_max);
    double main = 0.0, prev_val = 0.0;
    for (int i = 0; i < n_lam; ++i) {
        const double u = l0 + (l1 - l0) * i / (n_lam - 1.0);
        const double lam = std::exp(u);
        const std::vector<double> T = diag_coeff_laguerre(m_max, lam, r2);
        double s = 0.0;
        const double cz = std::cos(lam * dz);
        for (int m = 0; m <= m_max; ++m)
            s += cm[static_cast<std::size_t>(m)] *
                 (2.0 - 2.0 * cz * T[static_cast<std::size_t>(m)]);
        const double val = std::pow(4.0 * lam, -s2a) * s * lam * lam;  // |l| wt * log jac
        if (i > 0) main += 0.5 * (val + prev_val) * (l1 - l0) / (n_lam - 1.0);
        prev_val = val;
    }
    const double tail =
        2.0 * sum_cm * std::pow(4.0, -s2a) * std::pow(lam_max, 2.0 - s2a) / (s2a - 2.0) *
        -1.0;  // \int_L^inf 2 l^{1-2a} dl = 2 L^{2-2a}/(2a-2)
    return 2.0 * C0 * (main + tail);
}

/// Dirichlet-simplex closed form of the paper-normalized first-order chaos
/// weights: M_{n,k} = K^k t^{k b} prod_{j=0}^{k-1} B(j b + 1, b) with
/// b = 2 alpha - n and K = 2 Gamma(n+1-2a) 8^{2a-n-1} sum_m (2|m|+n)^{-(n+1)}.
inline double mnk_closed(int n, double alpha, double t, int k) {
    const double b = 2.0 * alpha - n;
    double S = 0.0;
    if (n == 1) {
        S = M_PI * M_PI / 8.0;  // sum (2m+1)^{-2}
    } else {
        for (long M = 0; M < 2000000; ++M) {
            long cnt = 1;
            for (int i = 1; i < n; ++i) cnt = cnt * (M + i) / i;
            const double term = cnt * std::pow(2.0 * M + n, -(n + 1.0));
            S += term;
            if (M > 10 && term < 1e-14 * S) break;
        }
    }
    const double K = 2.0 * std::tgamma(n + 1.0 - 2.0 * alpha) *
                     std::pow(8.0, 2.0 * alpha - n - 1.0) * S;
    double prod = 1.0;
    for (int j = 0; j < k; ++j)
        prod *= std::tgamma(j * b + 1.0) * std::tgamma(b) / std::tgamma(j * b + 1.0 + b);
    return std::pow(K, k) * std::pow(t, k * b) * prod;
}

}  // namespace oracles
