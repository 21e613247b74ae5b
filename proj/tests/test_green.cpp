#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heispam/green.hpp"
#include "heispam/rng.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace heispam;

TEST_CASE("golden value: G_1(e,(1,0,0)) = 1/(8 pi) for n = 1") {
    // frozen from the Folland-type closed form G_1(e,q) = 1/(8 pi sqrt(r^4+z^2)),
    // confirmed by resolution-doubled nested quadrature (stable to < 1e-5)
    const double g = eval_G(1.0, GroupPoint(1.0, 0.0, 0.0));
    CHECK(g == doctest::Approx(1.0 / (8.0 * M_PI)).epsilon(1e-4));

    for (double r : {0.5, 1.3}) {
        for (double z : {0.0, 0.8}) {
            if (r == 0.0 && z == 0.0) continue;
            const double v = eval_G_rz(1, 1.0, r, z);
            const double want = 1.0 / (8.0 * M_PI * std::sqrt(r * r * r * r + z * z));
            CHECK(v == doctest::Approx(want).epsilon(1e-5));
        }
    }
}

TEST_CASE("dilation scaling lambda^{2(n+1-a)} G_a(delta_lambda q) = G_a(q)") {
    for (int n : {1, 2}) {
        const double alpha = 0.75;
        std::vector<double> xs(n, 0.5), ys(n, -0.2);
        const GroupPoint q(xs, ys, 0.4);
        for (double lam : {0.6, 2.0}) {
            const GroupPoint dq = dilate(Dilation(lam), q);
            const double lhs = std::pow(lam, 2.0 * (n + 1 - alpha)) * eval_G(alpha, dq);
            const double rhs = eval_G(alpha, q);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-4));
        }
    }
}

TEST_CASE("positivity, inverse symmetry, rotation invariance") {
    const double alpha = 1.25;
    const GroupPoint q(0.7, 0.3, -0.4);
    const double g = eval_G(alpha, q);
    CHECK(g > 0.0);
    CHECK(eval_G(alpha, inverse(q)) == doctest::Approx(g).epsilon(1e-8));
    CHECK(eval_G(alpha, rotate(Rotation(1.1), q)) == doctest::Approx(g).epsilon(1e-7));
}

TEST_CASE("split independence: t_split vs 2 t_split") {
    const GroupPoint q(0.8, 0.0, 0.5);
    GreenSpec s1, s2;
    s1.t_split = 0.7;
    s2.t_split = 1.4;
    const double a = eval_G(0.9, q, s1);
    const double b = eval_G(0.9, q, s2);
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(eval_G(0.75, GroupPoint::identity(1)), std::domain_error);
    CHECK_THROWS_AS(eval_G(2.5, GroupPoint(1.0, 0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(eval_G(-0.1, GroupPoint(1.0, 0.0, 0.0)), std::domain_error);
}

TEST_CASE("two-sided gauge bound: G_a N^{2(n+1-a)} within a bounded band") {
    const double alpha = 0.75;
    const GreenTable& G = GreenTable::get(2.0 * alpha, 0.0);  // exponent for G_{1.5}
    (void)G;
    Rng rng(23);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double N = 0.1 * std::pow(100.0, rng.uniform());  // [0.1, 10]
        const double u = rng.uniform();
        const double r = N * u, z = N * N * (1 - u) * (1 - u);
        const double v = eval_G_rz(1, alpha, r, z) * std::pow(N, 2.0 * (2.0 - alpha));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi / lo < 20.0);
    CHECK(lo > 0.0);
}

TEST_CASE("mollified kernel: finite at e, approaches exact away from e") {
    const double a2 = 1.5, eps = 0.36;
    const double at_e = eval_G_rz(1, a2, 0.0, 0.0, {}, eps);
    CHECK(std::isfinite(at_e));
    CHECK(at_e > 0.0);
    const double far_exact = eval_G_rz(1, a2, 3.0, 1.0);
    const double far_moll = eval_G_rz(1, a2, 3.0, 1.0, {}, eps);
    CHECK(far_moll == doctest::Approx(far_exact).epsilon(0.05));

    // table agrees with direct evaluation
    const GreenTable& tab = GreenTable::get(a2, eps);
    for (double r : {0.1, 0.7, 2.0}) {
        for (double z : {0.0, 0.4, 2.0}) {
            const double d = eval_G_rz(1, a2, r, z, {}, eps);
            CHECK(tab.value_rz(r, z) == doctest::Approx(d).epsilon(2e-2));
        }
    }
}

TEST_CASE("exact-kernel table: profile interpolation accuracy") {
    const GreenTable& tab = GreenTable::get(1.25, 0.0);
    for (double r : {0.05, 0.4, 1.7, 6.0}) {
        for (double z : {0.0, 0.3, 4.0}) {
            if (r == 0.0 && z == 0.0) continue;
            const double d = eval_G_rz(1, 1.25, r, z);
            CHECK(tab.value_rz(r, z) == doctest::Approx(d).epsilon(2e-4));
        }
    }
}

TEST_CASE("increment variance: zero at coincidence, symmetry, spectral oracle") {
    const double alpha = 1.25;
    const GroupPoint x(0.0, 0.0, 0.0), y(0.5, 0.2, 0.15);
    CHECK(increment_variance(alpha, y, y) == 0.0);

    const double jxy = increment_variance(alpha, x, y);
    const double jyx = increment_variance(alpha, y, x);
    CHECK(jxy == doctest::Approx(jyx).epsilon(1e-9));

    // independent spectral (Plancherel/Laguerre) evaluation
    const double want = oracles::increment_variance_spectral(alpha, 0.5, 0.2, 0.15);
    CHECK(jxy == doctest::Approx(want).epsilon(2e-2));

    const GroupPoint z(-0.3, 0.6, -0.2);
    const double jd = increment_variance(alpha, y, z);
    const h1::Pt d = h1::diff(h1::Pt{y.x[0], y.y[0], y.z}, h1::Pt{z.x[0], z.y[0], z.z});
    const double want2 = oracles::increment_variance_spectral(alpha, d.x, d.y, d.z);
    CHECK(jd == doctest::Approx(want2).epsilon(2e-2));
}

TEST_CASE("a4 bound: J <= C N^{4a-2(n+1)} with stable fitted C") {
    const double alpha = 1.25;  // exponent 4a-4 = 1
    Rng rng(5);
    double cmax = 0.0, cmin = 1e300;
    for (int i = 0; i < 12; ++i) {
        const double N = 0.15 * std::pow(30.0, rng.uniform());
        const double u = 0.2 + 0.6 * rng.uniform();
        const GroupPoint y(N * u, 0.0, N * N * (1 - u) * (1 - u));
        const double J = increment_variance(alpha, GroupPoint::identity(1), y);
        const double ratio = J / std::pow(N, 4.0 * alpha - 4.0);
        cmax = std::max(cmax, ratio);
        cmin = std::min(cmin, ratio);
    }
    CHECK(cmax / cmin < 10.0);  // bounded constant across 1.5+ decades
}

TEST_CASE("increment variance: left-translation invariance") {
    const double alpha = 1.25;
    const GroupPoint y(0.4, -0.1, 0.2), z(-0.2, 0.3, -0.1), g(0.9, 0.7, -0.5);
    const double a = increment_variance(alpha, y, z);
    const double b = increment_variance(alpha, product(g, y), product(g, z));
    CHECK(b == doctest::Approx(a).epsilon(1e-6));
}

TEST_CASE("ultracontractivity-style decay of the Mellin tail is integrable") {
    // eval_G converges for alpha near the upper end (slow t-tail)
    const double v = eval_G_rz(1, 1.45, 1.0, 0.0);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
}
