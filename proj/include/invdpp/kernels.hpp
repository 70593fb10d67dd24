#pragma once

#include <cmath>
#include <vector>

#include "invdpp/core.hpp"
#include "invdpp/geometry.hpp"
#include "invdpp/special.hpp"

namespace invdpp {

// One of the three invariant models at density rho, represented by its
// rank-N projection onto the weighted monomial basis psi_k = c_k z^k
// sqrt(kappa).  For the sphere the projection is the full kernel and
// N = rho; for plane/hyperbolic N is a truncation chosen so the tail is
// negligible on the observation window (see truncation_choice).
struct KernelSpec {
    SpaceKind space = SpaceKind::Plane;
    double rho = 1.0;
    int truncation_rank = 1;
    std::vector<double> log_coeff_sq; // log c_k^2, k < truncation_rank

    static KernelSpec make(SpaceKind space, double rho, int truncation_rank = 0) {
        if (!(rho > 0.0)) throw domain_error("KernelSpec: rho must be positive");
        KernelSpec s;
        s.space = space;
        s.rho = rho;
        if (space == SpaceKind::Sphere) {
            double ri = std::round(rho);
            if (std::abs(rho - ri) > 1e-12 || ri < 1.0)
                throw domain_error("KernelSpec: sphere rho must be a positive integer");
            if (truncation_rank != 0 && truncation_rank != static_cast<int>(ri))
                throw domain_error("KernelSpec: sphere truncation rank must equal rho");
            s.truncation_rank = static_cast<int>(ri);
        } else {
            if (truncation_rank < 1)
                throw domain_error("KernelSpec: truncation rank must be >= 1");
            s.truncation_rank = truncation_rank;
        }
        s.log_coeff_sq.resize(s.truncation_rank);
        for (int k = 0; k < s.truncation_rank; ++k) {
            switch (space) {
                case SpaceKind::Plane:
                    s.log_coeff_sq[k] = k * std::log(rho) - log_gamma(k + 1.0);
                    break;
                case SpaceKind::Sphere:
                    s.log_coeff_sq[k] = log_binomial(rho - 1.0, k);
                    break;
                case SpaceKind::Hyperbolic:
                    s.log_coeff_sq[k] = log_binomial(rho + k, k);
                    break;
            }
        }
        return s;
    }
};

// kappa(z) = d mu_rho / dz, the reference density of the model.
inline double log_reference_density(SpaceKind space, double rho, cplx z) {
    require_in_chart(space, z);
    double lead = std::log(rho / pi);
    switch (space) {
        case SpaceKind::Plane: return lead - rho * std::norm(z);
        case SpaceKind::Sphere: return lead - (rho + 1.0) * std::log1p(std::norm(z));
        default: return lead + (rho - 1.0) * std::log1p(-std::norm(z));
    }
}

inline double reference_density(const KernelSpec& spec, cplx z) {
    return std::exp(log_reference_density(spec.space, spec.rho, z));
}

namespace detail {

// sum_{k=lo}^{hi} exp(log_mag_k) * e^{i k phase} with
// log_mag_k = base + log_coeff_sq[k] + k * log_r.  Magnitudes are assembled
// pointwise in the log domain so no intermediate over/underflows unless the
// value itself does.
inline cplx weighted_series_sum(const KernelSpec& spec, int lo, int hi, double base,
                                double log_r, double phase) {
    if (std::isinf(log_r) && log_r < 0.0) {
        // z w-bar = 0: only the constant term survives
        return lo == 0 ? cplx(std::exp(base + spec.log_coeff_sq[0]), 0.0) : cplx(0.0, 0.0);
    }
    cplx rot = std::polar(1.0, phase);
    cplx ph = std::polar(1.0, lo * phase);
    cplx sum(0.0, 0.0);
    for (int k = lo; k <= hi; ++k) {
        sum += std::exp(base + spec.log_coeff_sq[k] + k * log_r) * ph;
        ph *= rot;
    }
    return sum;
}

} // namespace detail

// The raw kernel K-check as its rank-N series sum_{k<N} c_k^2 (z w-bar)^k.
// For the sphere this is the whole kernel; elsewhere it is the projection
// actually used for sampling and trace formulas.
inline cplx kernel_raw(const KernelSpec& spec, cplx z, cplx w) {
    require_in_chart(spec.space, z);
    require_in_chart(spec.space, w);
    cplx u = z * std::conj(w);
    return detail::weighted_series_sum(spec, 0, spec.truncation_rank - 1, 0.0,
                                       std::log(std::abs(u)), std::arg(u));
}

// Lebesgue-weighted kernel of the rank-N projection,
// K(z,w) = sum_{k<N} psi_k(z) conj(psi_k(w)).
inline cplx kernel_weighted(const KernelSpec& spec, cplx z, cplx w) {
    require_in_chart(spec.space, z);
    require_in_chart(spec.space, w);
    cplx u = z * std::conj(w);
    double base = 0.5 * (log_reference_density(spec.space, spec.rho, z) +
                         log_reference_density(spec.space, spec.rho, w));
    return detail::weighted_series_sum(spec, 0, spec.truncation_rank - 1, base,
                                       std::log(std::abs(u)), std::arg(u));
}

// Diagonal K(z,z) of the rank-N projection (real, cheap path).
inline double kernel_weighted_diag(const KernelSpec& spec, cplx z) {
    require_in_chart(spec.space, z);
    double log_r2 = 2.0 * std::log(std::abs(z));
    double base = log_reference_density(spec.space, spec.rho, z);
    if (std::isinf(log_r2) && log_r2 < 0.0) return std::exp(base + spec.log_coeff_sq[0]);
    double sum = 0.0;
    for (int k = 0; k < spec.truncation_rank; ++k)
        sum += std::exp(base + spec.log_coeff_sq[k] + k * log_r2);
    return sum;
}

// Closed-form weighted kernel of the full (infinite-rank) model; for the
// sphere it coincides with the rank-rho sum.  Evaluated through complex
// logarithms so large rho stays in range.
inline cplx kernel_weighted_ideal(SpaceKind space, double rho, cplx z, cplx w) {
    require_in_chart(space, z);
    require_in_chart(space, w);
    const double lead = rho / pi;
    switch (space) {
        case SpaceKind::Plane: {
            double re = -0.5 * rho * std::norm(z - w);
            double im = rho * std::imag(z * std::conj(w));
            return lead * std::exp(re) * std::polar(1.0, im);
        }
        case SpaceKind::Sphere: {
            cplx lg = std::log(1.0 + z * std::conj(w)); // integer power: branch immaterial
            double lt = std::log1p(std::norm(z)) + std::log1p(std::norm(w));
            cplx e = (rho - 1.0) * lg - 0.5 * (rho + 1.0) * lt;
            return lead * std::exp(e.real()) * std::polar(1.0, e.imag());
        }
        default: {
            cplx lg = std::log(1.0 - z * std::conj(w)); // Re(1 - z w-bar) > 0: principal branch
            double lt = std::log1p(-std::norm(z)) + std::log1p(-std::norm(w));
            cplx e = -(rho + 1.0) * lg + 0.5 * (rho - 1.0) * lt;
            return lead * std::exp(e.real()) * std::polar(1.0, e.imag());
        }
    }
}

// Invariant kernel K^iota(z,w) = K(z,w) (eta(z) eta(w))^{-1/2} of the full
// model: |K^iota| is isometry invariant and the diagonal is rho/pi.
inline cplx kernel_invariant(const KernelSpec& spec, cplx z, cplx w) {
    require_in_chart(spec.space, z);
    require_in_chart(spec.space, w);
    const double rho = spec.rho;
    const double lead = rho / pi;
    switch (spec.space) {
        case SpaceKind::Plane:
            return kernel_weighted_ideal(spec.space, rho, z, w);
        case SpaceKind::Sphere: {
            cplx lg = std::log(1.0 + z * std::conj(w));
            double lt = std::log1p(std::norm(z)) + std::log1p(std::norm(w));
            cplx e = (rho - 1.0) * lg - 0.5 * (rho - 1.0) * lt;
            return lead * std::exp(e.real()) * std::polar(1.0, e.imag());
        }
        default: {
            cplx lg = std::log(1.0 - z * std::conj(w));
            double lt = std::log1p(-std::norm(z)) + std::log1p(-std::norm(w));
            cplx e = -(rho + 1.0) * lg + 0.5 * (rho + 1.0) * lt;
            return lead * std::exp(e.real()) * std::polar(1.0, e.imag());
        }
    }
}

// Radial Gaussian-type envelope phi_rho with |K(z,w)| <= phi_rho(z-w) on the
// stated restriction domain (plane: everywhere; hyperbolic: |z| <= R, |w| < 1;
// sphere: |z|, |w| <= R).
struct EnvelopeSpec {
    SpaceKind space = SpaceKind::Plane;
    double rho = 2.0;
    double restriction_radius = 1.0; // R; ignored for the plane

    static EnvelopeSpec make(SpaceKind space, double rho, double restriction_radius = 1.0) {
        if (space != SpaceKind::Plane && !(rho >= 2.0))
            throw domain_error("EnvelopeSpec: rho >= 2 required for sphere/hyperbolic");
        if (space == SpaceKind::Hyperbolic && !(restriction_radius < 1.0))
            throw domain_error("EnvelopeSpec: hyperbolic restriction radius must be < 1");
        if (space == SpaceKind::Sphere && !std::isfinite(restriction_radius))
            throw domain_error("EnvelopeSpec: sphere restriction radius must be finite");
        return {space, rho, restriction_radius};
    }
};

inline double envelope(const EnvelopeSpec& env, cplx s) {
    const double d2 = std::norm(s);
    switch (env.space) {
        case SpaceKind::Plane:
            return env.rho / pi * std::exp(-0.5 * env.rho * d2);
        case SpaceKind::Hyperbolic:
            return env.rho / sq(1.0 - env.restriction_radius) *
                   std::exp(-(env.rho - 1.0) * d2 / 8.0);
        default: {
            double b = sq(1.0 + sq(env.restriction_radius));
            return env.rho * std::exp(-(env.rho - 1.0) * d2 / (2.0 * b));
        }
    }
}

// Weighted spherical kernel truncated to polynomial degree rho-1-p; equal to
// kernel_weighted at p = 0.
inline cplx kernel_truncated_sphere(const KernelSpec& spec, int p, cplx z, cplx w) {
    if (spec.space != SpaceKind::Sphere)
        throw domain_error("kernel_truncated_sphere: sphere spec required");
    if (p < 0 || spec.rho < 1.0 + p)
        throw domain_error("kernel_truncated_sphere: requires rho >= 1 + p");
    cplx u = z * std::conj(w);
    double base = 0.5 * (log_reference_density(spec.space, spec.rho, z) +
                         log_reference_density(spec.space, spec.rho, w));
    return detail::weighted_series_sum(spec, 0, spec.truncation_rank - 1 - p, base,
                                       std::log(std::abs(u)), std::arg(u));
}

// The part removed by the degree-(rho-1-p) truncation: K - K-hat, a sum of
// just p top-degree terms.
inline cplx kernel_sphere_truncation_tail(const KernelSpec& spec, int p, cplx z, cplx w) {
    if (p == 0) return cplx(0.0, 0.0);
    if (spec.space != SpaceKind::Sphere)
        throw domain_error("kernel_sphere_truncation_tail: sphere spec required");
    if (spec.rho < 1.0 + p)
        throw domain_error("kernel_sphere_truncation_tail: requires rho >= 1 + p");
    cplx u = z * std::conj(w);
    double base = 0.5 * (log_reference_density(spec.space, spec.rho, z) +
                         log_reference_density(spec.space, spec.rho, w));
    return detail::weighted_series_sum(spec, spec.truncation_rank - p,
                                       spec.truncation_rank - 1, base,
                                       std::log(std::abs(u)), std::arg(u));
}

// psi_k(z) = c_k z^k sqrt(kappa(z)), the Lebesgue-orthonormal weighted basis.
inline cplx basis_function(const KernelSpec& spec, int k, cplx z) {
    if (k < 0 || k >= spec.truncation_rank)
        throw domain_error("basis_function: index outside truncation rank");
    require_in_chart(spec.space, z);
    double r = std::abs(z);
    double half_lk = 0.5 * log_reference_density(spec.space, spec.rho, z);
    if (r == 0.0)
        return k == 0 ? cplx(std::exp(0.5 * spec.log_coeff_sq[0] + half_lk), 0.0)
                      : cplx(0.0, 0.0);
    double mag = std::exp(0.5 * spec.log_coeff_sq[k] + k * std::log(r) + half_lk);
    return mag * std::polar(1.0, k * std::arg(z));
}

// Evaluates the whole basis column (psi_0(z), ..., psi_{N-1}(z)) in one pass.
class BasisEvaluator {
public:
    explicit BasisEvaluator(const KernelSpec& spec) : spec_(&spec) {}

    int rank() const { return spec_->truncation_rank; }

    // Fills out[k] = psi_k(z); returns K_N(z,z) = sum |psi_k(z)|^2.
    double evaluate(cplx z, std::vector<cplx>& out) const {
        const KernelSpec& s = *spec_;
        out.resize(s.truncation_rank);
        double r = std::abs(z);
        double half_lk = 0.5 * log_reference_density(s.space, s.rho, z);
        double diag = 0.0;
        if (r == 0.0) {
            std::fill(out.begin(), out.end(), cplx(0.0, 0.0));
            out[0] = cplx(std::exp(0.5 * s.log_coeff_sq[0] + half_lk), 0.0);
            return std::norm(out[0]);
        }
        const double lr = std::log(r);
        const cplx rot = std::polar(1.0, std::arg(z));
        cplx ph(1.0, 0.0);
        for (int k = 0; k < s.truncation_rank; ++k) {
            double mag = std::exp(0.5 * s.log_coeff_sq[k] + k * lr + half_lk);
            out[k] = mag * ph;
            diag += mag * mag;
            ph *= rot;
        }
        return diag;
    }

private:
    const KernelSpec* spec_;
};

} // namespace invdpp
