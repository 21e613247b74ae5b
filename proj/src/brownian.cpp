#include "heispam/brownian.hpp"

#include <cmath>
#include <stdexcept>

namespace heispam {

HeisPath sample_path(const PathConfig& cfg, Rng& rng) {
    if (cfg.steps < 1 || !(cfg.t_end > 0.0) || cfg.n < 1)
        throw std::invalid_argument("sample_path: invalid config");
    const int n = cfg.n;
    const double dt = cfg.t_end / static_cast<double>(cfg.steps);
    const double sd = std::sqrt(dt);

    HeisPath path;
    path.times.reserve(cfg.steps + 1);
    path.euclid.reserve(cfg.steps + 1);
    path.area.reserve(cfg.steps + 1);
    path.points.reserve(cfg.steps + 1);

    std::vector<double> b(2 * n, 0.0);
    double area = 0.0;
    auto push = [&](double tk) {
        path.times.push_back(tk);
        path.euclid.push_back(b);
        path.area.push_back(area);
        GroupPoint p(std::vector<double>(b.begin(), b.begin() + n),
                     std::vector<double>(b.begin() + n, b.end()), area);
        path.points.push_back(std::move(p));
    };
    push(0.0);
    for (long k = 0; k < cfg.steps; ++k) {
        double da = 0.0;
        for (int i = 0; i < n; ++i) {
            const double db = sd * rng.normal();
            const double dbeta = sd * rng.normal();
            da += 2.0 * (b[i] * dbeta - b[n + i] * db);
            b[i] += db;
            b[n + i] += dbeta;
        }
        area += da;
        push(dt * static_cast<double>(k + 1));
    }
    return path;
}

void sample_endpoint(int n, double t, long steps, Rng& rng, std::vector<double>& b,
                     double& area) {
    const double dt = t / static_cast<double>(steps);
    const double sd = std::sqrt(dt);
    b.assign(2 * n, 0.0);
    area = 0.0;
    for (long k = 0; k < steps; ++k) {
        for (int i = 0; i < n; ++i) {
            const double db = sd * rng.normal();
            const double dbeta = sd * rng.normal();
            area += 2.0 * (b[i] * dbeta - b[n + i] * db);
            b[i] += db;
            b[n + i] += dbeta;
        }
    }
}

namespace {
double gauge_of(const std::vector<double>& b, double area) {
    double h = 0.0;
    for (double v : b) h += v * v;
    return std::sqrt(h) + std::sqrt(std::fabs(area));
}
}  // namespace

ScalingDiagnostic scaling_diagnostic(int n, double t, long paths, long steps, Rng& rng) {
    if (paths < 100) throw std::invalid_argument("scaling_diagnostic: paths >= 100");
    std::vector<double> dt_sample(static_cast<std::size_t>(paths));
    std::vector<double> d1_sample(static_cast<std::size_t>(paths));
    std::vector<double> b;
    double a = 0.0;
    for (long i = 0; i < paths; ++i) {
        sample_endpoint(n, t, steps, rng, b, a);
        dt_sample[static_cast<std::size_t>(i)] = gauge_of(b, a);
    }
    for (long i = 0; i < paths; ++i) {
        sample_endpoint(n, 1.0, steps, rng, b, a);
        d1_sample[static_cast<std::size_t>(i)] = gauge_of(b, a);
    }
    ScalingDiagnostic diag;
    const MomentEstimate mt = mean_se(dt_sample), m1 = mean_se(d1_sample);
    diag.mean_ratio = mt.value / m1.value;
    diag.mean_ratio_se = diag.mean_ratio * std::sqrt(std::pow(mt.std_err / mt.value, 2) +
                                                     std::pow(m1.std_err / m1.value, 2));
    diag.expected_ratio = std::sqrt(t);
    for (double& v : d1_sample) v *= std::sqrt(t);
    diag.ks = ks_two_sample(std::move(dt_sample), std::move(d1_sample));
    return diag;
}

MomentEstimate small_ball_probability(double epsilon, double t, long paths, long steps,
                                      Rng& rng) {
    if (!(epsilon >= 0.0) || !(t > 0.0))
        throw std::invalid_argument("small_ball_probability: bad arguments");
    const double dt = t / static_cast<double>(steps);
    const double sd = std::sqrt(dt);
    long hits = 0;
    for (long p = 0; p < paths; ++p) {
        h1::Pt b{0, 0, 0}, bt{0, 0, 0};
        bool inside = true;
        for (long k = 0; k < steps && inside; ++k) {
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
            inside = h1::gauge(h1::diff(b, bt)) <= epsilon;
        }
        if (inside) ++hits;
    }
    MomentEstimate m;
    m.samples = paths;
    m.value = static_cast<double>(hits) / static_cast<double>(paths);
    m.std_err = std::sqrt(m.value * (1.0 - m.value) / static_cast<double>(paths));
    m.flagged = hits == 0;
    return m;
}

}  // namespace heispam
