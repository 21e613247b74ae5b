#include "heispam/gaussian_form.hpp"

namespace heispam {

namespace {

// solve A x = rhs for symmetric positive definite A (tiny d), returning also det A
double solve_spd(std::vector<double> A, std::vector<double>& x, int d) {
    // plain LU with partial pivoting; d is 3 or so
    std::vector<int> piv(static_cast<std::size_t>(d));
    double det = 1.0;
    for (int k = 0; k < d; ++k) {
        int p = k;
        for (int i = k + 1; i < d; ++i)
            if (std::fabs(A[static_cast<std::size_t>(i) * d + k]) >
                std::fabs(A[static_cast<std::size_t>(p) * d + k]))
                p = i;
        if (p != k) {
            for (int j = 0; j < d; ++j)
                std::swap(A[static_cast<std::size_t>(k) * d + j],
                          A[static_cast<std::size_t>(p) * d + j]);
            std::swap(x[static_cast<std::size_t>(k)], x[static_cast<std::size_t>(p)]);
            det = -det;
        }
        const double a = A[static_cast<std::size_t>(k) * d + k];
        if (a == 0.0) throw std::runtime_error("GaussianForm: singular H");
        det *= a;
        for (int i = k + 1; i < d; ++i) {
            const double f = A[static_cast<std::size_t>(i) * d + k] / a;
            A[static_cast<std::size_t>(i) * d + k] = f;
            for (int j = k + 1; j < d; ++j)
                A[static_cast<std::size_t>(i) * d + j] -=
                    f * A[static_cast<std::size_t>(k) * d + j];
            x[static_cast<std::size_t>(i)] -= f * x[static_cast<std::size_t>(k)];
        }
    }
    for (int i = d - 1; i >= 0; --i) {
        double s = x[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < d; ++j)
            s -= A[static_cast<std::size_t>(i) * d + j] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / A[static_cast<std::size_t>(i) * d + i];
    }
    return det;
}

}  // namespace

GaussianForm GaussianForm::squared_affine(const std::vector<double>& M,
                                          const std::vector<double>& m0, double w) {
    const int d = static_cast<int>(m0.size());
    GaussianForm f = zero(d);
    const double s = 1.0 / (w * w);
    // E = s/2 * (Mv + m0)^T (Mv + m0)
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double h = 0.0;
            for (int k = 0; k < d; ++k)
                h += M[static_cast<std::size_t>(k) * d + i] *
                     M[static_cast<std::size_t>(k) * d + j];
            f.H[static_cast<std::size_t>(i) * d + j] = s * h;
        }
    for (int i = 0; i < d; ++i) {
        double v = 0.0;
        for (int k = 0; k < d; ++k)
            v += M[static_cast<std::size_t>(k) * d + i] * m0[static_cast<std::size_t>(k)];
        f.b[static_cast<std::size_t>(i)] = s * v;
    }
    double c = 0.0;
    for (int k = 0; k < d; ++k) c += m0[static_cast<std::size_t>(k)] * m0[static_cast<std::size_t>(k)];
    f.c = 0.5 * s * c;
    return f;
}

GaussianForm GaussianForm::operator+(const GaussianForm& o) const {
    if (d != o.d) throw std::invalid_argument("GaussianForm: dim mismatch");
    GaussianForm f = *this;
    for (std::size_t i = 0; i < H.size(); ++i) f.H[i] += o.H[i];
    for (std::size_t i = 0; i < b.size(); ++i) f.b[i] += o.b[i];
    f.c += o.c;
    return f;
}

GaussianForm GaussianForm::substitute(const std::vector<double>& M,
                                      const std::vector<double>& m0) const {
    GaussianForm f = zero(d);
    // H' = M^T H M ; b' = M^T (H m0 + b) ; c' = 1/2 m0^T H m0 + b^T m0 + c
    std::vector<double> Hm(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            Hm[static_cast<std::size_t>(i)] +=
                H[static_cast<std::size_t>(i) * d + j] * m0[static_cast<std::size_t>(j)];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l)
                    s += M[static_cast<std::size_t>(k) * d + i] *
                         H[static_cast<std::size_t>(k) * d + l] *
                         M[static_cast<std::size_t>(l) * d + j];
            f.H[static_cast<std::size_t>(i) * d + j] = s;
        }
    for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int k = 0; k < d; ++k)
            s += M[static_cast<std::size_t>(k) * d + i] *
                 (Hm[static_cast<std::size_t>(k)] + b[static_cast<std::size_t>(k)]);
        f.b[static_cast<std::size_t>(i)] = s;
    }
    double c2 = c;
    for (int k = 0; k < d; ++k)
        c2 += (0.5 * Hm[static_cast<std::size_t>(k)] + b[static_cast<std::size_t>(k)]) *
              m0[static_cast<std::size_t>(k)];
    f.c = c2;
    return f;
}

double GaussianForm::eval(const std::vector<double>& v) const {
    double e = c;
    for (int i = 0; i < d; ++i) {
        e += b[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
        for (int j = 0; j < d; ++j)
            e += 0.5 * v[static_cast<std::size_t>(i)] *
                 H[static_cast<std::size_t>(i) * d + j] * v[static_cast<std::size_t>(j)];
    }
    return std::exp(-e);
}

double GaussianForm::integral() const {
    std::vector<double> x = b;
    const double det = solve_spd(H, x, d);  // x = H^{-1} b
    if (det <= 0.0) throw std::runtime_error("GaussianForm: H not positive definite");
    double quad = 0.0;
    for (int i = 0; i < d; ++i) quad += b[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    return std::pow(2.0 * M_PI, 0.5 * d) / std::sqrt(det) * std::exp(0.5 * quad - c);
}

}  // namespace heispam
