#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heispam/brownian.hpp"
#include "heispam/group.hpp"

#include <cmath>

using namespace heispam;

TEST_CASE("path structure: grid, start at e, points match components") {
    PathConfig cfg;
    cfg.n = 2;
    cfg.t_end = 1.5;
    cfg.steps = 64;
    Rng rng(100);
    const HeisPath p = sample_path(cfg, rng);
    REQUIRE(p.times.size() == 65);
    CHECK(p.times.front() == 0.0);
    CHECK(p.times.back() == doctest::Approx(1.5));
    for (std::size_t k = 1; k < p.times.size(); ++k) CHECK(p.times[k] > p.times[k - 1]);
    CHECK(gauge(p.points.front()) == 0.0);
    for (std::size_t k = 0; k < p.times.size(); ++k) {
        CHECK(p.points[k].z == p.area[k]);
        for (int i = 0; i < 2; ++i) {
            CHECK(p.points[k].x[static_cast<std::size_t>(i)] == p.euclid[k][static_cast<std::size_t>(i)]);
            CHECK(p.points[k].y[static_cast<std::size_t>(i)] == p.euclid[k][static_cast<std::size_t>(2 + i)]);
        }
    }
}

TEST_CASE("single step: area is deterministically zero (left-point rule)") {
    PathConfig cfg;
    cfg.steps = 1;
    Rng rng(7);
    const HeisPath p = sample_path(cfg, rng);
    CHECK(p.area.back() == 0.0);
}

TEST_CASE("determinism given the seed") {
    PathConfig cfg;
    cfg.steps = 32;
    Rng r1(42), r2(42);
    const HeisPath a = sample_path(cfg, r1);
    const HeisPath b = sample_path(cfg, r2);
    CHECK(a.area.back() == b.area.back());
    CHECK(a.euclid.back()[0] == b.euclid.back()[0]);
    Rng r3(43);
    const HeisPath c = sample_path(cfg, r3);
    CHECK(a.area.back() != c.area.back());
}

TEST_CASE("B, beta are standard 2n-dim BM and Var(A_t) = 4 n t^2") {
    Rng rng(1234);
    for (const auto& [n, t] : std::vector<std::pair<int, double>>{{1, 1.0}, {2, 4.0}}) {
        const long paths = 30000, steps = 256;
        std::vector<double> b;
        double a;
        double sb2 = 0.0, sa = 0.0, sa2 = 0.0, sb = 0.0;
        for (long i = 0; i < paths; ++i) {
            sample_endpoint(n, t, steps, rng, b, a);
            sb += b[0];
            sb2 += b[0] * b[0];
            sa += a;
            sa2 += a * a;
        }
        const double npd = static_cast<double>(paths);
        const double mean_b = sb / npd, var_b = sb2 / npd - mean_b * mean_b;
        const double mean_a = sa / npd, var_a = sa2 / npd - mean_a * mean_a;
        // per-coordinate variance t within 3 SE (SE ~ var sqrt(2/n))
        CHECK(std::fabs(var_b - t) < 3.0 * t * std::sqrt(2.0 / npd));
        CHECK(std::fabs(mean_b) < 3.0 * std::sqrt(t / npd));
        const double want = 4.0 * n * t * t;
        CHECK(std::fabs(var_a - want) < 3.0 * want * std::sqrt(2.0 / npd));
        CHECK(std::fabs(mean_a) < 3.0 * std::sqrt(want / npd));
    }
}

TEST_CASE("refinement consistency: halving dt moves Var(A_t) within its SE band") {
    Rng rng(77);
    const long paths = 40000;
    auto var_at = [&](long steps) {
        std::vector<double> b;
        double a, s = 0.0, s2 = 0.0;
        for (long i = 0; i < paths; ++i) {
            sample_endpoint(1, 1.0, steps, rng, b, a);
            s += a;
            s2 += a * a;
        }
        const double m = s / paths;
        return s2 / paths - m * m;
    };
    const double v1 = var_at(256), v2 = var_at(512);
    const double se = 4.0 * std::sqrt(2.0 / paths);  // SE of Var(A) ~ Var sqrt(2/n)
    CHECK(std::fabs(v1 - v2) < 2.0 * se * 2.0);
}

TEST_CASE("scaling diagnostic: KS and mean ratio") {
    Rng rng(2024);
    const ScalingDiagnostic d = scaling_diagnostic(1, 4.0, 10000, 256, rng);
    CHECK(d.ks.p_value > 0.01);
    CHECK(std::fabs(d.mean_ratio - d.expected_ratio) < 3.0 * d.mean_ratio_se);

    // t = 1: identically generated laws
    const ScalingDiagnostic d1 = scaling_diagnostic(1, 1.0, 5000, 128, rng);
    CHECK(d1.ks.p_value > 0.01);
}

TEST_CASE("rotation invariance in law of the endpoint gauge") {
    Rng rng(31);
    const long paths = 8000, steps = 128;
    std::vector<double> base(paths), rot(paths);
    std::vector<double> b;
    double a;
    for (long i = 0; i < paths; ++i) {
        sample_endpoint(1, 1.0, steps, rng, b, a);
        base[static_cast<std::size_t>(i)] = gauge(GroupPoint(b[0], b[1], a));
    }
    for (long i = 0; i < paths; ++i) {
        sample_endpoint(1, 1.0, steps, rng, b, a);
        const GroupPoint p(b[0], b[1], a);
        rot[static_cast<std::size_t>(i)] = gauge(rotate(Rotation(1.2), p));
    }
    const KsResult ks = ks_two_sample(base, rot);
    CHECK(ks.p_value > 0.01);
}

TEST_CASE("small ball probability: limits and flags") {
    Rng rng(5);
    // huge epsilon -> probability 1
    const MomentEstimate p1 = small_ball_probability(50.0, 0.5, 500, 64, rng);
    CHECK(p1.value == doctest::Approx(1.0));
    // epsilon = 0 -> probability 0, flagged
    const MomentEstimate p0 = small_ball_probability(0.0, 0.5, 200, 32, rng);
    CHECK(p0.value == 0.0);
    CHECK(p0.flagged);
}

TEST_CASE("small ball: -log P grows ~ linearly in t at fixed epsilon") {
    Rng rng(99);
    std::vector<double> ts{0.4, 0.6, 0.8, 1.0}, xs, ys;
    for (double t : ts) {
        const MomentEstimate p = small_ball_probability(2.0, t, 8000, 192, rng);
        REQUIRE(!p.flagged);
        xs.push_back(t);
        ys.push_back(-std::log(p.value));
    }
    const LinearFit f = linear_fit(xs, ys);
    CHECK(f.slope > 0.0);
    CHECK(f.r_squared > 0.9);
}

TEST_CASE("small ball refinement: doubling steps moves P by < 2 SE + grid bias") {
    Rng rng(11);
    const MomentEstimate a = small_ball_probability(2.0, 0.5, 20000, 128, rng);
    const MomentEstimate b = small_ball_probability(2.0, 0.5, 20000, 256, rng);
    // sup over grid underestimates the true sup: finer grid -> slightly smaller P
    CHECK(b.value <= a.value + 2.0 * (a.std_err + b.std_err));
    CHECK(std::fabs(a.value - b.value) < 2.0 * (a.std_err + b.std_err) + 0.01);
}
