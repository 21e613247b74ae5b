#include "heispam/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heispam {

namespace {
double kolmogorov_q(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = sign * 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::fabs(term) < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(sum, 0.0, 1.0);
}
}  // namespace

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    KsResult r;
    r.statistic = d;
    r.p_value = kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
    return r;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 matching points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ssr += e * e;
    }
    f.r_squared = syy > 0 ? 1.0 - ssr / syy : 1.0;
    return f;
}

MomentEstimate mean_se(const std::vector<double>& v, std::uint64_t seed) {
    MomentEstimate m;
    m.samples = static_cast<long>(v.size());
    m.seed = seed;
    if (v.empty()) return m;
    double s = 0.0;
    for (double x : v) s += x;
    m.value = s / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m.value) * (x - m.value);
    if (v.size() > 1)
        m.std_err = std::sqrt(ss / (static_cast<double>(v.size()) - 1.0) /
                              static_cast<double>(v.size()));
    return m;
}

MomentEstimate exp_mean_lse(const std::vector<double>& exponents, std::uint64_t seed) {
    MomentEstimate m;
    m.samples = static_cast<long>(exponents.size());
    m.seed = seed;
    if (exponents.empty()) return m;
    double mx = exponents[0];
    for (double s : exponents) mx = std::max(mx, s);
    double sum = 0.0;
    for (double s : exponents) sum += std::exp(s - mx);
    const double n = static_cast<double>(exponents.size());
    const double mean_shift = sum / n;
    double ss = 0.0;
    for (double s : exponents) {
        const double d = std::exp(s - mx) - mean_shift;
        ss += d * d;
    }
    m.value = std::exp(mx) * mean_shift;
    if (exponents.size() > 1)
        m.std_err = std::exp(mx) * std::sqrt(ss / (n - 1.0) / n);
    m.flagged = m.value > 0 && m.std_err / m.value > 0.5;
    return m;
}

}  // namespace heispam
