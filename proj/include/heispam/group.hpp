#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace heispam {

/// A point of the Heisenberg group H^n in coordinates (x, y, z) with
/// x, y in R^n and z in R.  The group law twists the z component by the
/// standard symplectic form; everything else is componentwise addition.
struct GroupPoint {
    std::vector<double> x;
    std::vector<double> y;
    double z = 0.0;

    GroupPoint() = default;
    GroupPoint(std::vector<double> x_, std::vector<double> y_, double z_)
        : x(std::move(x_)), y(std::move(y_)), z(z_) {
        if (x.size() != y.size())
            throw std::invalid_argument("GroupPoint: x/y dimension mismatch");
    }
    /// n = 1 convenience constructor.
    GroupPoint(double x1, double y1, double z_) : x{x1}, y{y1}, z(z_) {}

    std::size_t dim() const { return x.size(); }

    static GroupPoint identity(std::size_t n) {
        return GroupPoint(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0);
    }

    bool finite() const {
        for (double v : x)
            if (!std::isfinite(v)) return false;
        for (double v : y)
            if (!std::isfinite(v)) return false;
        return std::isfinite(z);
    }
};

struct Dilation {
    double lambda;
    explicit Dilation(double l) : lambda(l) {
        if (!(l > 0.0)) throw std::invalid_argument("Dilation: lambda must be > 0");
    }
};

struct Rotation {
    double theta;
    explicit Rotation(double t) : theta(t) {}
};

/// Symplectic form omega((x,y),(x',y')) = sum_i x'_i y_i - x_i y'_i.
double symplectic(const GroupPoint& p, const GroupPoint& q);

/// Group product p * q.  Throws on dimension mismatch.
GroupPoint product(const GroupPoint& p, const GroupPoint& q);

/// Group inverse (x,y,z) -> (-x,-y,-z).
GroupPoint inverse(const GroupPoint& p);

/// Dilation delta_lambda(x,y,z) = (lambda x, lambda y, lambda^2 z).
GroupPoint dilate(const Dilation& d, const GroupPoint& p);

/// Horizontal rotation by theta; z is untouched.
GroupPoint rotate(const Rotation& r, const GroupPoint& p);

/// Left translation L_g(p) = g * p.
inline GroupPoint left_translate(const GroupPoint& g, const GroupPoint& p) {
    return product(g, p);
}

/// Homogeneous gauge N(x,y,z) = |(x,y)| + |z|^{1/2}.
double gauge(const GroupPoint& p);

/// Homogeneous distance N(p^{-1} * q); left-invariant, 1-homogeneous
/// under dilations, symmetric.
double hom_distance(const GroupPoint& p, const GroupPoint& q);

// Scalar fast paths for n = 1, used by the samplers and quadratures.
// State is (x, y, z); the group law matches `product` exactly.
namespace h1 {

struct Pt {
    double x, y, z;
};

inline Pt mul(const Pt& p, const Pt& q) {
    // omega((px,py),(qx,qy)) = qx*py - px*qy
    return {p.x + q.x, p.y + q.y, p.z + q.z + 2.0 * (q.x * p.y - p.x * q.y)};
}

inline Pt inv(const Pt& p) { return {-p.x, -p.y, -p.z}; }

inline double gauge(const Pt& p) {
    return std::sqrt(p.x * p.x + p.y * p.y) + std::sqrt(std::fabs(p.z));
}

inline Pt diff(const Pt& p, const Pt& q) { return mul(inv(p), q); }

}  // namespace h1

}  // namespace heispam
