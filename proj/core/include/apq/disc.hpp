#pragma once

#include <cmath>
#include <complex>

#include "apq/errors.hpp"

namespace apq {

using complexd = std::complex<double>;

/// A point strictly inside the open unit disc.
class DiscPoint {
public:
    DiscPoint() : z_(0.0, 0.0) {}

    explicit DiscPoint(complexd z) : z_(z) {
        if (!(std::norm(z) < 1.0))
            throw OutOfRange("DiscPoint: |z| >= 1");
    }

    DiscPoint(double re, double im) : DiscPoint(complexd(re, im)) {}

    complexd value() const { return z_; }
    double re() const { return z_.real(); }
    double im() const { return z_.imag(); }
    double abs() const { return std::abs(z_); }
    /// Argument in [0, 2*pi).
    double theta() const {
        double t = std::arg(z_);
        if (t < 0.0) t += 2.0 * M_PI;
        if (t >= 2.0 * M_PI) t = 0.0;
        return t;
    }

    friend bool operator==(const DiscPoint& a, const DiscPoint& b) {
        return a.z_ == b.z_;
    }

private:
    complexd z_;
};

/// Euclidean disk whose closure stays inside the closed unit disc.
struct EuclideanDisk {
    DiscPoint center;
    double radius = 0.0;

    EuclideanDisk(DiscPoint c, double r) : center(c), radius(r) {
        if (r < 0.0 || c.abs() + r > 1.0 + 1e-14)
            throw OutOfRange("EuclideanDisk: closure escapes the unit disc");
    }
};

/// rho(z, w) = |z - w| / |1 - conj(w) z|, the Moebius-invariant metric of
/// the disc. Always in [0, 1) for interior points.
inline double pseudo_distance(complexd z, complexd w) {
    return std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
}

inline double pseudo_distance(const DiscPoint& z, const DiscPoint& w) {
    return pseudo_distance(z.value(), w.value());
}

/// M_a(z) = (a - z) / (1 - conj(a) z). Involution of the disc swapping a and 0.
inline complexd mobius(complexd a, complexd z) {
    return (a - z) / (1.0 - std::conj(a) * z);
}

inline DiscPoint mobius(const DiscPoint& a, const DiscPoint& z) {
    return DiscPoint(mobius(a.value(), z.value()));
}

/// The pseudohyperbolic disk E(z, r) = { w : rho(z, w) < r } as a Euclidean
/// disk: center (1 - r^2) z / (1 - r^2 |z|^2), radius r (1 - |z|^2) / (1 - r^2 |z|^2).
inline EuclideanDisk hyperbolic_disk(const DiscPoint& z, double r) {
    if (!(r > 0.0 && r < 1.0))
        throw OutOfRange("hyperbolic_disk: radius must lie in (0, 1)");
    const double zz = std::norm(z.value());
    const double denom = 1.0 - r * r * zz;
    const complexd center = (1.0 - r * r) * z.value() / denom;
    const double radius = r * (1.0 - zz) / denom;
    return EuclideanDisk(DiscPoint(center), radius);
}

/// Composition bound: points within rho-distance a of a center, then b further,
/// stay within (a + b) / (1 + a b) of the center.
inline double pseudo_compose(double a, double b) {
    return (a + b) / (1.0 + a * b);
}

} // namespace apq
