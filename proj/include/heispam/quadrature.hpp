#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace heispam {

struct QuadRule {
    std::vector<double> nodes;    // on [-1,1] for Legendre, weight e^{-x^2} for Hermite
    std::vector<double> weights;
    std::vector<double> wexp;     // Hermite only: weights[i] * e^{nodes[i]^2}, stable
};

/// Gauss-Legendre rule on [-1,1] by Newton iteration on P_n.
const QuadRule& gauss_legendre(int n);

/// Gauss-Hermite rule for weight e^{-x^2} (physicists'), Newton iteration.
const QuadRule& gauss_hermite(int n);

/// Integrate f on [a,b] with an n-point Gauss-Legendre rule.
template <typename F>
double gl_integrate(F&& f, double a, double b, int n) {
    const QuadRule& r = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(c + h * r.nodes[i]);
    return s * h;
}

struct AdaptiveResult {
    double value = 0.0;
    double est_error = 0.0;
    bool converged = true;
    long evaluations = 0;
};

/// Adaptive composite Gauss-Legendre (bisection on the GL15-vs-GL7 gap).
AdaptiveResult adaptive_gl(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol, int max_depth = 28,
                           long max_evals = 2'000'000);

/// Sum an alternating-ish series of panel contributions with Aitken
/// delta-squared acceleration on the partial sums.  `panel(k)` returns the
/// k-th contribution; terminates when the accelerated estimate stabilizes.
struct SeriesResult {
    double value = 0.0;
    double est_error = 0.0;
    bool converged = true;
    int terms = 0;
};
SeriesResult aitken_sum(const std::function<double(int)>& panel, double rel_tol,
                        double abs_tol, int min_terms = 4, int max_terms = 200000);

/// Natural cubic spline on a strictly increasing grid; clamps outside.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> xs, std::vector<double> ys);
    double operator()(double x) const;
    bool empty() const { return xs_.empty(); }

  private:
    std::vector<double> xs_, ys_, m_;  // m_: second derivatives
};

}  // namespace heispam
