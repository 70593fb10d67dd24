#pragma once

#include <array>
#include <cmath>
#include <limits>

#include "invdpp/core.hpp"
#include "invdpp/rng.hpp"

namespace invdpp {

// The three homogeneous spaces, each kept in its planar chart: the plane
// itself, the sphere minus the point at infinity, the open unit disk.
enum class SpaceKind { Plane, Sphere, Hyperbolic };

inline const char* space_name(SpaceKind s) {
    switch (s) {
        case SpaceKind::Plane: return "plane";
        case SpaceKind::Sphere: return "sphere";
        default: return "hyperbolic";
    }
}

inline SpaceKind space_from_name(const std::string& name) {
    if (name == "plane") return SpaceKind::Plane;
    if (name == "sphere") return SpaceKind::Sphere;
    if (name == "hyperbolic") return SpaceKind::Hyperbolic;
    throw domain_error("unknown model: " + name);
}

// Chart radius: infinite for plane and sphere chart, 1 for the disk.
inline double chart_radius(SpaceKind s) {
    return s == SpaceKind::Hyperbolic ? 1.0 : std::numeric_limits<double>::infinity();
}

inline bool in_chart(SpaceKind s, cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return s != SpaceKind::Hyperbolic || std::norm(z) < 1.0;
}

inline void require_in_chart(SpaceKind s, cplx z) {
    if (!in_chart(s, z)) throw domain_error("point outside chart domain");
}

// eta(z) = d nu / dz, the density of the invariant measure in the chart.
inline double invariant_density(SpaceKind s, cplx z) {
    require_in_chart(s, z);
    switch (s) {
        case SpaceKind::Plane: return 1.0;
        case SpaceKind::Sphere: return 1.0 / sq(1.0 + std::norm(z));
        default: return 1.0 / sq(1.0 - std::norm(z));
    }
}

// psi(z): the metric is |dz|/psi, and eta = psi^{-2}.
inline double conformal_factor(SpaceKind s, cplx z) {
    require_in_chart(s, z);
    switch (s) {
        case SpaceKind::Plane: return 1.0;
        case SpaceKind::Sphere: return 1.0 + std::norm(z);
        default: return 1.0 - std::norm(z);
    }
}

// |grad_iota f|(z) from the planar gradient: psi(z) * |grad f|(z).
inline double intrinsic_gradient_norm(SpaceKind s, std::array<double, 2> planar_gradient,
                                      cplx z) {
    return conformal_factor(s, z) * std::hypot(planar_gradient[0], planar_gradient[1]);
}

// Geodesic distance from the origin to radius r in the chart.
inline double distance_from_origin(SpaceKind s, double r) {
    switch (s) {
        case SpaceKind::Plane: return r;
        case SpaceKind::Sphere: return std::atan(r);
        default: return std::atanh(r);
    }
}

// An orientation-preserving isometry of one of the three spaces.
//   plane:      z -> e^{i theta} z + b
//   sphere:     z -> (alpha z + beta) / (-conj(beta) z + conj(alpha)),
//               |alpha|^2 + |beta|^2 = 1
//   hyperbolic: z -> e^{i theta} (z - a) / (1 - conj(a) z), |a| < 1
struct Isometry {
    SpaceKind space = SpaceKind::Plane;
    double theta = 0.0; // rotation phase (plane, hyperbolic)
    cplx b{0.0, 0.0};   // plane translation
    cplx alpha{1.0, 0.0}, beta{0.0, 0.0}; // sphere SU(2) parameters
    cplx a{0.0, 0.0};   // hyperbolic center sent to 0

    static Isometry identity(SpaceKind s) {
        Isometry t;
        t.space = s;
        return t;
    }

    static Isometry plane(double theta, cplx b) {
        Isometry t;
        t.space = SpaceKind::Plane;
        t.theta = theta;
        t.b = b;
        return t;
    }

    static Isometry sphere(cplx alpha, cplx beta) {
        Isometry t;
        t.space = SpaceKind::Sphere;
        double n = std::sqrt(std::norm(alpha) + std::norm(beta));
        if (n == 0.0) throw domain_error("sphere isometry: zero parameters");
        t.alpha = alpha / n;
        t.beta = beta / n;
        return t;
    }

    static Isometry hyperbolic(double theta, cplx a) {
        if (std::norm(a) >= 1.0) throw domain_error("hyperbolic isometry: |a| >= 1");
        Isometry t;
        t.space = SpaceKind::Hyperbolic;
        t.theta = theta;
        t.a = a;
        return t;
    }

    // The isometry sending z0 to the origin (no extra rotation).
    static Isometry to_origin(SpaceKind s, cplx z0) {
        require_in_chart(s, z0);
        switch (s) {
            case SpaceKind::Plane: return plane(0.0, -z0);
            case SpaceKind::Sphere: {
                double n = std::sqrt(1.0 + std::norm(z0));
                return sphere(cplx(1.0, 0.0) / n, -z0 / n);
            }
            default: return hyperbolic(0.0, z0);
        }
    }

    cplx apply(cplx z) const {
        require_in_chart(space, z);
        switch (space) {
            case SpaceKind::Plane:
                return std::polar(1.0, theta) * z + b;
            case SpaceKind::Sphere: {
                cplx den = -std::conj(beta) * z + std::conj(alpha);
                if (den == cplx(0.0, 0.0))
                    throw domain_error("sphere isometry: image is the point at infinity");
                return (alpha * z + beta) / den;
            }
            default:
                return std::polar(1.0, theta) * (z - a) / (1.0 - std::conj(a) * z);
        }
    }

    // True when apply(z) would land on the excluded point at infinity.
    bool maps_to_infinity(cplx z) const {
        return space == SpaceKind::Sphere &&
               -std::conj(beta) * z + std::conj(alpha) == cplx(0.0, 0.0);
    }

    // |T'(z)|, the modulus of the chart derivative.
    double derivative_modulus(cplx z) const {
        switch (space) {
            case SpaceKind::Plane:
                return 1.0;
            case SpaceKind::Sphere: {
                cplx den = -std::conj(beta) * z + std::conj(alpha);
                // determinant of the SU(2) matrix is |alpha|^2+|beta|^2 = 1
                return 1.0 / std::norm(den);
            }
            default: {
                cplx den = 1.0 - std::conj(a) * z;
                return (1.0 - std::norm(a)) / std::norm(den);
            }
        }
    }

    // this after other: z -> this(other(z)).
    Isometry compose(const Isometry& other) const {
        if (space != other.space) throw domain_error("compose: mixed spaces");
        switch (space) {
            case SpaceKind::Plane: {
                cplx r = std::polar(1.0, theta);
                return plane(theta + other.theta, r * other.b + b);
            }
            case SpaceKind::Sphere: {
                // SU(2) matrix product [alpha beta; -conj(beta) conj(alpha)]
                cplx na = alpha * other.alpha - beta * std::conj(other.beta);
                cplx nb = alpha * other.beta + beta * std::conj(other.alpha);
                return sphere(na, nb);
            }
            default: {
                // Aut(D) matrices [p q; conj(q) conj(p)] compose by matrix product.
                cplx p1 = std::polar(1.0, 0.5 * theta), q1 = -p1 * a;
                cplx p2 = std::polar(1.0, 0.5 * other.theta), q2 = -p2 * other.a;
                cplx p = p1 * p2 + q1 * std::conj(q2);
                cplx q = p1 * q2 + q1 * std::conj(p2);
                return hyperbolic(2.0 * std::arg(p), -q / p);
            }
        }
    }

    static Isometry random(SpaceKind s, RngStream& rng, double displacement = 0.8) {
        double th = 2.0 * pi * rng.next_u01();
        switch (s) {
            case SpaceKind::Plane:
                return plane(th, displacement * cplx(2.0 * rng.next_u01() - 1.0,
                                                     2.0 * rng.next_u01() - 1.0));
            case SpaceKind::Sphere: {
                cplx al = rng.next_complex_gaussian();
                cplx be = rng.next_complex_gaussian();
                if (std::abs(al) + std::abs(be) == 0.0) al = 1.0;
                return sphere(al, be);
            }
            default: {
                cplx a = std::polar(displacement * std::sqrt(rng.next_u01()),
                                    2.0 * pi * rng.next_u01());
                Isometry rot = hyperbolic(th, 0.0);
                return rot.compose(hyperbolic(0.0, a));
            }
        }
    }
};

// Geodesic distance in the invariant metric: move z to the origin by an
// isometry, then the distance to the image of w is an explicit 1D integral
// of 1/psi along the ray.
inline double invariant_distance(SpaceKind s, cplx z, cplx w) {
    require_in_chart(s, z);
    require_in_chart(s, w);
    switch (s) {
        case SpaceKind::Plane:
            return std::abs(z - w);
        case SpaceKind::Sphere:
            return std::atan(std::abs((w - z) / (1.0 + std::conj(z) * w)));
        default:
            return std::atanh(std::abs((w - z) / (1.0 - std::conj(z) * w)));
    }
}

} // namespace invdpp
