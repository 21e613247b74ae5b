#pragma once

#include "heispam/group.hpp"
#include "heispam/quadrature.hpp"

#include <complex>
#include <vector>

namespace heispam {

/// A projective Fourier mode (m, ell, lambda) with lambda != 0.
struct SpectralIndex {
    std::vector<int> m;
    std::vector<int> ell;
    double lambda = 1.0;

    SpectralIndex(std::vector<int> m_, std::vector<int> ell_, double lam)
        : m(std::move(m_)), ell(std::move(ell_)), lambda(lam) {}
    SpectralIndex(int m1, int l1, double lam) : m{m1}, ell{l1}, lambda(lam) {}

    int n() const { return static_cast<int>(m.size()); }
    int abs_m() const {
        int s = 0;
        for (int v : m) s += v;
        return s;
    }
    bool diagonal() const { return m == ell; }
};

/// Symmetric log-spaced lambda grid carrying the |lambda|^n d lambda weight.
struct SpectralTruncation {
    int m_max = 64;
    std::vector<double> lambdas;  // includes both signs, excludes 0
    std::vector<double> weights;  // trapezoid weights times |lambda|^n
};

SpectralTruncation make_log_truncation(int n, int m_max, double lam_min, double lam_max,
                                       int per_side);

/// The paper-facing semigroup clock: `full_delta` treats t as the time of
/// e^{t Delta}; `half_delta` is the Brownian clock (generator Delta/2), so a
/// Gaveau-kernel time t corresponds to e^{(t/2) Delta}.
enum class SemigroupConvention { full_delta, half_delta };

/// Normalized Hermite function value Phi_k^lambda(xi) (multi-index k),
/// Phi_k^lambda(x) = |lambda|^{n/4} Phi_k(sqrt(|lambda|) x), by the stable
/// three-term recursion.
double hermite_value(const std::vector<int>& k, double lambda,
                     const std::vector<double>& xi);

/// 1-d normalized Hermite functions phi_0..phi_kmax at xi.
void hermite_column(int kmax, double xi, std::vector<double>& out);

/// e^{-4 tau |lambda| (2|m|+n)} delta_{m,ell}, tau = t (full_delta) or t/2.
double heat_multiplier(double t, const SpectralIndex& idx, SemigroupConvention conv);

/// 4^{-alpha} |lambda|^{-alpha} (2|m|+n)^{-alpha}.
double frac_multiplier(double alpha, const SpectralIndex& idx);

struct SpectralCoeff {
    SpectralIndex idx;
    std::complex<double> value;
};

/// Truncated W^{-alpha,2} functional: sum over coefficients of
/// frac_multiplier(alpha, idx)^2 |c|^2 with the grid's |lambda|^n d lambda
/// weight.  Coefficient lambdas must lie on the truncation grid.
double sobolev_norm(const std::vector<SpectralCoeff>& coeffs, double alpha,
                    const SpectralTruncation& trunc);

/// Matrix coefficient e_q(m, ell, lambda) of the Schrodinger representation
/// in the scaled Hermite basis, by Gauss-Hermite quadrature (n = 1).
std::complex<double> matrix_coefficient(const GroupPoint& q, const SpectralIndex& idx,
                                        int min_nodes = 64);

/// All coefficients e_q(m, ell, lambda) for m, ell <= m_max in one sweep
/// (n = 1); out[m * (m_max+1) + ell].
void matrix_coefficient_block(const GroupPoint& q, double lambda, int m_max,
                              std::vector<std::complex<double>>& out, int min_nodes = 64);

/// Diagonal coefficients e_q(m, m, lambda) for q = (r, 0, 0) on the x-ray,
/// m = 0..m_max.  Radial integrands only ever need these.
void matrix_coefficient_ray_diag(double r, double lambda, int m_max,
                                 std::vector<std::complex<double>>& out,
                                 int min_nodes = 64);

}  // namespace heispam
