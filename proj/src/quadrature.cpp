#include "heispam/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace heispam {

namespace {

QuadRule make_legendre(int n) {
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Tricomi-style initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0, p1 = 0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

// Hermite polynomials H_k (physicists'), weight e^{-x^2}.  Roots found by
// clamped Newton descending from the edge, with the WKB spacing
// pi / sqrt(2n+1-x^2) as the initial guess for each next root.
QuadRule make_hermite(int n) {
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    r.wexp.resize(n);
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}
    // rescaled recurrence for the orthonormal Hermite polynomials: returns the
    // mantissas and a shared log-scale so extreme nodes neither overflow nor
    // underflow (values themselves reach e^{x^2/2} magnitudes).
    auto eval_scaled = [&](double x, double& pn, double& pprev, double& log_scale) {
        double p1 = pim4, p2 = 0.0;
        log_scale = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = x * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(double(j) / (j + 1.0)) * p3;
            const double m = std::max(std::fabs(p1), std::fabs(p2));
            if (m > 1e140) {
                p1 *= 1e-140;
                p2 *= 1e-140;
                log_scale += 140.0 * M_LN10;
            }
        }
        pn = p1;
        pprev = p2;
    };
    auto eval = [&](double x, double& pn, double& pprev) {
        double ls;
        eval_scaled(x, pn, pprev, ls);
    };
    // returns the polished root; log_pp2 <- log(pp^2) with pp the derivative
    auto newton_polish = [&](double x, double& log_pp2) {
        for (int it = 0; it < 100; ++it) {
            double pn, pm, ls;
            eval_scaled(x, pn, pm, ls);
            const double dx = pn / (std::sqrt(2.0 * n) * pm);
            x -= dx;
            log_pp2 = std::log(2.0 * n * pm * pm) + 2.0 * ls;
            if (std::fabs(dx) < 1e-15 * std::max(1.0, std::fabs(x))) break;
        }
        return x;
    };
    double prev = 0.0;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = 0.0, log_pp2 = 0.0;
        if (i == 0) {
            x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
            x = newton_polish(x, log_pp2);
        } else if (n % 2 == 1 && i == (n - 1) / 2) {
            x = 0.0;  // central root of odd-degree Hermite, exact
            double pn, pm, ls;
            eval_scaled(0.0, pn, pm, ls);
            log_pp2 = std::log(2.0 * n * pm * pm) + 2.0 * ls;
        } else {
            // WKB spacing; march down from the previous root to a sign change,
            // bisect a few times, then Newton locally.
            const double gap =
                M_PI / std::sqrt(std::max(2.0 * n + 1.0 - prev * prev, 2.0));
            double a = prev - 0.5 * gap;
            double pn, pm;
            eval(a, pn, pm);
            double sa = pn >= 0.0 ? 1.0 : -1.0;
            double b = a;
            bool found = false;
            for (int k = 0; k < 40; ++k) {
                b -= 0.12 * gap;
                eval(b, pn, pm);
                const double sb = pn >= 0.0 ? 1.0 : -1.0;
                if (sb != sa) {
                    found = true;
                    break;
                }
                a = b;
            }
            if (!found) b = prev - gap;  // fall back to the plain WKB guess
            for (int k = 0; found && k < 8; ++k) {
                const double mid = 0.5 * (a + b);
                eval(mid, pn, pm);
                const double sm = pn >= 0.0 ? 1.0 : -1.0;
                if (sm == sa)
                    a = mid;
                else
                    b = mid;
            }
            x = newton_polish(0.5 * (a + b), log_pp2);
        }
        prev = x;
        r.nodes[n - 1 - i] = x;
        r.nodes[i] = -x;
        const double logw = std::log(2.0) - log_pp2;
        r.weights[n - 1 - i] = std::exp(logw);
        r.weights[i] = r.weights[n - 1 - i];
        r.wexp[n - 1 - i] = std::exp(logw + x * x);
        r.wexp[i] = r.wexp[n - 1 - i];
    }
    return r;
}

std::map<int, QuadRule>& cache(bool hermite) {
    static std::map<int, QuadRule> leg, her;
    return hermite ? her : leg;
}
std::mutex cache_mutex;

}  // namespace

const QuadRule& gauss_legendre(int n) {
    std::lock_guard<std::mutex> lk(cache_mutex);
    auto& c = cache(false);
    auto it = c.find(n);
    if (it == c.end()) it = c.emplace(n, make_legendre(n)).first;
    return it->second;
}

const QuadRule& gauss_hermite(int n) {
    std::lock_guard<std::mutex> lk(cache_mutex);
    auto& c = cache(true);
    auto it = c.find(n);
    if (it == c.end()) it = c.emplace(n, make_hermite(n)).first;
    return it->second;
}

namespace {

struct Panel {
    double a, b, coarse, fine, err;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b, long& evals) {
    Panel p{a, b, 0, 0, 0};
    p.coarse = gl_integrate(f, a, b, 7);
    p.fine = gl_integrate(f, a, b, 15);
    p.err = std::fabs(p.fine - p.coarse);
    evals += 22;
    return p;
}

}  // namespace

AdaptiveResult adaptive_gl(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol, int max_depth, long max_evals) {
    AdaptiveResult res;
    if (a == b) return res;
    struct Item {
        Panel p;
        int depth;
    };
    std::vector<Item> stack;
    stack.push_back({eval_panel(f, a, b, res.evaluations), 0});
    double total = stack[0].p.fine;
    // iteratively split the worst panel until the sum of error bounds passes
    std::vector<Item> done;
    while (!stack.empty()) {
        const double budget = std::max(abs_tol, rel_tol * std::fabs(total));
        double err_open = 0.0;
        for (auto& it : stack) err_open += it.p.err;
        double err_done = 0.0;
        for (auto& it : done) err_done += it.p.err;
        if (err_open + err_done <= budget) break;
        // pop the worst open panel
        std::size_t worst = 0;
        for (std::size_t i = 1; i < stack.size(); ++i)
            if (stack[i].p.err > stack[worst].p.err) worst = i;
        Item cur = stack[worst];
        stack.erase(stack.begin() + static_cast<long>(worst));
        if (cur.depth >= max_depth || res.evaluations > max_evals) {
            done.push_back(cur);
            continue;
        }
        const double mid = 0.5 * (cur.p.a + cur.p.b);
        Item l{eval_panel(f, cur.p.a, mid, res.evaluations), cur.depth + 1};
        Item r{eval_panel(f, mid, cur.p.b, res.evaluations), cur.depth + 1};
        total += l.p.fine + r.p.fine - cur.p.fine;
        stack.push_back(l);
        stack.push_back(r);
    }
    double err = 0.0, val = 0.0;
    for (auto& it : stack) {
        val += it.p.fine;
        err += it.p.err;
    }
    for (auto& it : done) {
        val += it.p.fine;
        err += it.p.err;
    }
    res.value = val;
    res.est_error = err;
    res.converged = err <= std::max(abs_tol, rel_tol * std::fabs(val)) * 1.0001 + 1e-300;
    return res;
}

SeriesResult aitken_sum(const std::function<double(int)>& panel, double rel_tol,
                        double abs_tol, int min_terms, int max_terms) {
    SeriesResult res;
    double s = 0.0;
    double s1 = 0.0, s2 = 0.0;  // trailing partial sums
    double accel_prev = 0.0;
    bool have_prev = false;
    for (int k = 0; k < max_terms; ++k) {
        const double t = panel(k);
        s2 = s1;
        s1 = s;
        s += t;
        res.terms = k + 1;
        if (k + 1 >= std::max(min_terms, 3)) {
            const double d1 = s - s1, d2 = s1 - s2;
            double accel = s;
            const double denom = d1 - d2;
            if (std::fabs(denom) > 1e-300) accel = s - d1 * d1 / denom;
            if (have_prev) {
                const double delta = std::fabs(accel - accel_prev);
                if (delta <= std::max(abs_tol, rel_tol * std::fabs(accel)) &&
                    std::fabs(t) <= std::max(abs_tol, rel_tol * std::fabs(accel))) {
                    res.value = accel;
                    res.est_error = delta + std::fabs(t);
                    return res;
                }
            }
            accel_prev = accel;
            have_prev = true;
        }
    }
    res.value = have_prev ? accel_prev : s;
    res.est_error = std::fabs(panel(res.terms - 1));
    res.converged = false;
    return res;
}

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    const std::size_t n = xs_.size();
    if (n < 3 || ys_.size() != n) throw std::invalid_argument("CubicSpline: bad grid");
    m_.assign(n, 0.0);
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double sig = (xs_[i] - xs_[i - 1]) / (xs_[i + 1] - xs_[i - 1]);
        const double p = sig * m_[i - 1] + 2.0;
        m_[i] = (sig - 1.0) / p;
        u[i] = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]) -
               (ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]);
        u[i] = (6.0 * u[i] / (xs_[i + 1] - xs_[i - 1]) - sig * u[i - 1]) / p;
    }
    for (std::size_t k = n - 1; k-- > 0;) m_[k] = m_[k] * m_[k + 1] + u[k];
}

double CubicSpline::operator()(double x) const {
    const std::size_t n = xs_.size();
    if (x <= xs_.front()) x = xs_.front();
    if (x >= xs_.back()) x = xs_.back();
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (hi + lo) / 2;
        if (xs_[mid] > x)
            hi = mid;
        else
            lo = mid;
    }
    const double h = xs_[hi] - xs_[lo];
    const double a = (xs_[hi] - x) / h, b = (x - xs_[lo]) / h;
    return a * ys_[lo] + b * ys_[hi] +
           ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * (h * h) / 6.0;
}

}  // namespace heispam
