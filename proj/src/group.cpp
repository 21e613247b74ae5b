#include "heispam/group.hpp"

namespace heispam {

double symplectic(const GroupPoint& p, const GroupPoint& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i) s += q.x[i] * p.y[i] - p.x[i] * q.y[i];
    return s;
}

GroupPoint product(const GroupPoint& p, const GroupPoint& q) {
    if (p.dim() != q.dim())
        throw std::invalid_argument("product: dimension mismatch");
    GroupPoint r = p;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        r.x[i] += q.x[i];
        r.y[i] += q.y[i];
    }
    r.z = p.z + q.z + 2.0 * symplectic(p, q);
    return r;
}

GroupPoint inverse(const GroupPoint& p) {
    GroupPoint r = p;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        r.x[i] = -p.x[i];
        r.y[i] = -p.y[i];
    }
    r.z = -p.z;
    return r;
}

GroupPoint dilate(const Dilation& d, const GroupPoint& p) {
    GroupPoint r = p;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        r.x[i] *= d.lambda;
        r.y[i] *= d.lambda;
    }
    r.z *= d.lambda * d.lambda;
    return r;
}

GroupPoint rotate(const Rotation& rot, const GroupPoint& p) {
    const double c = std::cos(rot.theta), s = std::sin(rot.theta);
    GroupPoint r = p;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        r.x[i] = c * p.x[i] + s * p.y[i];
        r.y[i] = -s * p.x[i] + c * p.y[i];
    }
    return r;
}

double gauge(const GroupPoint& p) {
    double h = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i) h += p.x[i] * p.x[i] + p.y[i] * p.y[i];
    return std::sqrt(h) + std::sqrt(std::fabs(p.z));
}

double hom_distance(const GroupPoint& p, const GroupPoint& q) {
    return gauge(product(inverse(p), q));
}

}  // namespace heispam
