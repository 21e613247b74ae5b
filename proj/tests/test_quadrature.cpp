#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heispam/quadrature.hpp"
#include "heispam/stats.hpp"

#include <cmath>

using namespace heispam;

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
    for (int n : {4, 8, 16, 31}) {
        const QuadRule& r = gauss_legendre(n);
        double wsum = 0.0;
        for (double w : r.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-13));
        // exact for degree 2n-1
        double v = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            v += r.weights[i] * std::pow(r.nodes[i], 2 * n - 2);
        CHECK(v == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-11));
    }
}

TEST_CASE("Gauss-Hermite rule: moments of e^{-x^2}") {
    for (int n : {8, 20, 64, 200}) {
        const QuadRule& r = gauss_hermite(n);
        double m0 = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            m0 += r.weights[i];
            m2 += r.weights[i] * r.nodes[i] * r.nodes[i];
        }
        CHECK(m0 == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-11));
        CHECK(m2 == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-10));
    }
}

TEST_CASE("adaptive GL on standard integrals") {
    AdaptiveResult r =
        adaptive_gl([](double x) { return std::exp(-x * x); }, 0.0, 10.0, 1e-12, 1e-14);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-11));

    // integrable endpoint behavior
    r = adaptive_gl([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0, 1e-9, 1e-12);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-5));

    // u/sinh(u): the Gaveau normalization constant
    r = adaptive_gl([](double u) { return u / std::sinh(u); }, 1e-9, 60.0, 1e-12, 1e-14);
    CHECK(r.value == doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-8));
}

TEST_CASE("aitken acceleration of an alternating series") {
    // sum (-1)^k/(k+1) = ln 2
    SeriesResult s = aitken_sum(
        [](int k) { return (k % 2 ? -1.0 : 1.0) / (k + 1.0); }, 1e-10, 1e-12, 4, 100000);
    CHECK(s.value == doctest::Approx(std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("cubic spline reproduces smooth functions") {
    std::vector<double> xs, ys;
    for (int i = 0; i <= 40; ++i) {
        const double x = i / 40.0;
        xs.push_back(x);
        ys.push_back(std::sin(3.0 * x));
    }
    CubicSpline sp(xs, ys);
    // natural boundary conditions: test interior accuracy
    for (double x : {0.13, 0.37, 0.62, 0.87})
        CHECK(sp(x) == doctest::Approx(std::sin(3.0 * x)).epsilon(5e-6));
}

TEST_CASE("linear_fit recovers slope and R^2") {
    std::vector<double> x, y;
    for (int i = 0; i < 50; ++i) {
        x.push_back(0.1 * i);
        y.push_back(2.5 * 0.1 * i - 1.0);
    }
    const LinearFit f = linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}
