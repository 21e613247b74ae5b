#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace heispam {

/// exp(-E(v)) with E(v) = 1/2 v^T H v + b^T v + c on R^d.  Closed under
/// products and affine substitutions, with a closed-form integral; this is
/// all the machinery the Gaussian test-function pair integrals need.
struct GaussianForm {
    int d = 0;
    std::vector<double> H;  // row-major d*d, symmetric
    std::vector<double> b;  // d
    double c = 0.0;

    static GaussianForm zero(int d) {
        GaussianForm f;
        f.d = d;
        f.H.assign(static_cast<std::size_t>(d) * d, 0.0);
        f.b.assign(static_cast<std::size_t>(d), 0.0);
        return f;
    }

    /// E(v) = |M v + m0|^2 / (2 w^2)
    static GaussianForm squared_affine(const std::vector<double>& M,
                                       const std::vector<double>& m0, double w);

    GaussianForm operator+(const GaussianForm& o) const;  // product of Gaussians

    /// E'(u) = E(M u + m0)
    GaussianForm substitute(const std::vector<double>& M,
                            const std::vector<double>& m0) const;

    double eval(const std::vector<double>& v) const;

    /// \int_{R^d} exp(-E(v)) dv  (requires H positive definite)
    double integral() const;
};

}  // namespace heispam
