#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heispam/spectral.hpp"
#include "heispam/quadrature.hpp"
#include "oracles.hpp"

#include <cmath>
#include <complex>

using namespace heispam;

TEST_CASE("hermite ground state and normalization") {
    // n=1, k=0, lambda=1: Phi_0(0) = pi^{-1/4}
    const double v = hermite_value({0}, 1.0, {0.0});
    CHECK(v == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-14));

    // \int Phi_0^2 = 1 by quadrature
    const QuadRule& gh = gauss_hermite(40);
    double s = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        const double x = gh.nodes[i];
        const double h = hermite_value({0}, 1.0, {x});
        s += gh.wexp[i] * h * h;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("orthonormality of the scaled Hermite family") {
    const double lam = 1.7;
    const QuadRule& gh = gauss_hermite(80);
    const double ss = std::sqrt(lam);
    for (int j : {0, 1, 4}) {
        for (int k : {0, 1, 4, 7}) {
            double s = 0.0;
            for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
                const double xi = gh.nodes[i] / ss;  // eta = s xi
                s += gh.wexp[i] / ss * hermite_value({j}, lam, {xi}) *
                     hermite_value({k}, lam, {xi});
            }
            CHECK(s == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("eigenrelation -phi'' + xi^2 phi = (2k+n) phi by finite differences") {
    const double h = 1e-4;
    for (int k : {0, 1, 3, 6}) {
        const double xi = 0.37;
        auto f = [&](double x) { return hermite_value({k}, 1.0, {x}); };
        const double d2 = (f(xi + h) - 2.0 * f(xi) + f(xi - h)) / (h * h);
        const double lhs = -d2 + xi * xi * f(xi);
        CHECK(lhs / f(xi) == doctest::Approx(2.0 * k + 1.0).epsilon(1e-4));
    }
}

TEST_CASE("heat multiplier: limits, Kronecker factor, semigroup, conventions") {
    const SpectralIndex diag(2, 2, 0.8), off(2, 3, 0.8);
    CHECK(heat_multiplier(0.0, diag, SemigroupConvention::full_delta) == 1.0);
    CHECK(heat_multiplier(1.0, off, SemigroupConvention::full_delta) == 0.0);

    const double s = 0.3, t = 0.9;
    const double ms = heat_multiplier(s, diag, SemigroupConvention::full_delta);
    const double mt = heat_multiplier(t, diag, SemigroupConvention::full_delta);
    const double mst = heat_multiplier(s + t, diag, SemigroupConvention::full_delta);
    CHECK(ms * mt == doctest::Approx(mst).epsilon(1e-14));

    // half_delta clock: tau = t/2
    CHECK(heat_multiplier(t, diag, SemigroupConvention::half_delta) ==
          doctest::Approx(heat_multiplier(0.5 * t, diag, SemigroupConvention::full_delta)));
}

TEST_CASE("fractional multiplier: exact values and composition") {
    const SpectralIndex idx(0, 0, 1.0);
    CHECK(frac_multiplier(0.0, idx) == doctest::Approx(1.0));
    CHECK(frac_multiplier(1.0, idx) == doctest::Approx(0.25));  // 4^{-1} * 1 * 1

    const SpectralIndex idx2(3, 3, -1.7);
    const double a = 0.4, b = 0.9;
    CHECK(frac_multiplier(a, idx2) * frac_multiplier(b, idx2) ==
          doctest::Approx(frac_multiplier(a + b, idx2)).epsilon(1e-14));

    // commutes with the heat multiplier as scalars
    const double hm = heat_multiplier(0.5, idx2, SemigroupConvention::full_delta);
    CHECK(frac_multiplier(a, idx2) * hm == doctest::Approx(hm * frac_multiplier(a, idx2)));
}

TEST_CASE("criterion-2 identity: half_delta Plancherel sum equals p_{2t}(e)") {
    // (2^{n-1}/pi^{n+1}) sum_m \int e^{-8 tau |l| (2m+1)} |l| dl, tau = t/2
    const double t = 0.7, tau = 0.5 * t;
    double s = 0.0;
    for (long m = 0; m < 400000; ++m)
        s += 2.0 / std::pow(8.0 * tau * (2.0 * m + 1.0), 2);
    const double val = s / (M_PI * M_PI);
    CHECK(val == doctest::Approx(1.0 / (64.0 * t * t)).epsilon(1e-5));
}

TEST_CASE("matrix coefficients: identity point, unitarity bound, row sums") {
    // q = e -> delta_{m, ell}
    std::vector<std::complex<double>> block;
    matrix_coefficient_block(GroupPoint::identity(1), 1.3, 8, block);
    for (int m = 0; m <= 8; ++m)
        for (int l = 0; l <= 8; ++l) {
            const std::complex<double> v = block[static_cast<std::size_t>(m) * 9 + l];
            CHECK(std::abs(v - (m == l ? 1.0 : 0.0)) < 1e-12);
        }

    // |e_q| <= 1 and row sums -> 1
    const GroupPoint q(1.0, 1.0, 0.0);
    for (int mm : {24, 48, 96}) {
        matrix_coefficient_block(q, 1.0, mm, block);
        double mx = 0.0;
        for (auto& v : block) mx = std::max(mx, std::abs(v));
        CHECK(mx <= 1.0 + 1e-10);
        double row0 = 0.0;
        for (int l = 0; l <= mm; ++l) row0 += std::norm(block[static_cast<std::size_t>(l)]);
        if (mm == 96) CHECK(row0 == doctest::Approx(1.0).epsilon(1e-6));
        else CHECK(row0 <= 1.0 + 1e-10);
    }
}

TEST_CASE("diagonal coefficients match the Laguerre closed form") {
    for (double lam : {0.3, 1.1, 4.0}) {
        for (double r : {0.2, 0.9, 2.0}) {
            std::vector<std::complex<double>> ray;
            matrix_coefficient_ray_diag(r, lam, 40, ray);
            const std::vector<double> T = oracles::diag_coeff_laguerre(40, lam, r * r);
            for (int m = 0; m <= 40; ++m) {
                CHECK(ray[static_cast<std::size_t>(m)].real() ==
                      doctest::Approx(T[static_cast<std::size_t>(m)]).epsilon(1e-8));
                CHECK(std::fabs(ray[static_cast<std::size_t>(m)].imag()) < 1e-10);
            }
        }
    }
    // general point: phase e^{-i lambda z} and radial dependence
    const double lam = 0.9, z = 0.7;
    const GroupPoint q(0.5, -0.3, z);
    const double r2 = 0.25 + 0.09;
    const std::vector<double> T = oracles::diag_coeff_laguerre(6, lam, r2);
    for (int m = 0; m <= 6; ++m) {
        const std::complex<double> v = matrix_coefficient(q, SpectralIndex(m, m, lam));
        const std::complex<double> want =
            std::exp(std::complex<double>(0.0, -lam * z)) * T[static_cast<std::size_t>(m)];
        CHECK(std::abs(v - want) < 1e-9);
    }
}

TEST_CASE("sobolev_norm: zero, single mode, multiplier consistency") {
    SpectralTruncation tr = make_log_truncation(1, 16, 1e-2, 10.0, 40);
    CHECK(sobolev_norm({}, 0.7, tr) == 0.0);

    // single mode at a grid lambda
    const double lam = tr.lambdas[5];
    double w = tr.weights[5];
    std::vector<SpectralCoeff> coeffs{{SpectralIndex(0, 0, lam), {2.0, 0.0}}};
    const double norm0 = sobolev_norm(coeffs, 0.0, tr);
    CHECK(norm0 == doctest::Approx(4.0 * w).epsilon(1e-12));

    // applying frac_multiplier(-alpha) to the coefficients recovers alpha = 0
    const double alpha = 0.6;
    std::vector<SpectralCoeff> scaled = coeffs;
    for (auto& c : scaled) c.value *= frac_multiplier(-alpha, c.idx);
    CHECK(sobolev_norm(scaled, alpha, tr) == doctest::Approx(norm0).epsilon(1e-12));

    // off-grid lambda rejected
    std::vector<SpectralCoeff> bad{{SpectralIndex(0, 0, 0.123456), {1.0, 0.0}}};
    CHECK_THROWS_AS(sobolev_norm(bad, 0.0, tr), std::invalid_argument);
}

TEST_CASE("sobolev_norm is monotone under truncation growth") {
    SpectralTruncation tr = make_log_truncation(1, 8, 1e-2, 10.0, 30);
    std::vector<SpectralCoeff> coeffs;
    for (int i = 0; i < 6; ++i)
        coeffs.push_back({SpectralIndex(i % 3, i % 3, tr.lambdas[static_cast<std::size_t>(2 * i)]),
                          {1.0 / (1.0 + i), 0.5}});
    const double v1 = sobolev_norm(coeffs, 0.4, tr);
    coeffs.push_back({SpectralIndex(4, 4, tr.lambdas[3]), {0.3, 0.0}});
    const double v2 = sobolev_norm(coeffs, 0.4, tr);
    CHECK(v2 >= v1);
}
