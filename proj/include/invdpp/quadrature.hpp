#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "invdpp/core.hpp"

namespace invdpp {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 4000;
    int base_order = 12; // Gauss-Legendre points per panel

    static QuadratureConfig for_1d() { return {1e-10, 1e-14, 4000, 12}; }
    static QuadratureConfig for_2d() { return {1e-8, 1e-12, 2000, 12}; }
    static QuadratureConfig for_pair() { return {1e-6, 1e-10, 800, 10}; }
};

// Every estimate carries its error bound; `converged` is false when the
// subdivision budget ran out before the requested tolerance was met.
struct QuadResult {
    double value = 0.0;
    double error = std::numeric_limits<double>::infinity();
    bool converged = false;
    long evaluations = 0;
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1,1], computed once per order by Newton
// iteration on P_n.
struct GaussRule {
    std::vector<double> x, w;
};

inline GaussRule make_gauss_rule(int n) {
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        double wi = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.w[i] = wi;
        rule.w[n - 1 - i] = wi;
    }
    return rule;
}

inline const GaussRule& gauss_rule(int n) {
    // built once, all orders, so concurrent lookups never mutate
    static const std::vector<GaussRule> cache = [] {
        std::vector<GaussRule> c(33);
        for (int k = 2; k <= 32; ++k) c[k] = make_gauss_rule(k);
        return c;
    }();
    n = std::clamp(n, 2, 32);
    return cache[n];
}

template <typename Fn>
double gauss_panel(Fn&& f, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        s += rule.w[i] * f(mid + half * rule.x[i]);
    return s * half;
}

struct Panel {
    double a, b, value, error;
};

} // namespace detail

// Globally adaptive integration of f over [a, b].  Panel error is estimated
// by comparing one Gauss panel against its two halves; the panel with the
// largest error is split until the summed error meets the tolerance.
template <typename Fn>
QuadResult integrate_interval(Fn&& f, double a, double b,
                              const QuadratureConfig& cfg = QuadratureConfig::for_1d()) {
    const auto& rule = detail::gauss_rule(cfg.base_order);
    long evals = 0;
    auto make_panel = [&](double lo, double hi) {
        double whole = detail::gauss_panel(f, lo, hi, rule);
        double m = 0.5 * (lo + hi);
        double refined = detail::gauss_panel(f, lo, m, rule) + detail::gauss_panel(f, m, hi, rule);
        evals += 3 * cfg.base_order;
        return detail::Panel{lo, hi, refined, std::abs(refined - whole)};
    };

    auto cmp = [](const detail::Panel& p, const detail::Panel& q) {
        if (p.error != q.error) return p.error < q.error;
        return p.a < q.a; // deterministic tie-break
    };
    std::priority_queue<detail::Panel, std::vector<detail::Panel>, decltype(cmp)> heap(cmp);
    heap.push(make_panel(a, b));
    double total_value = heap.top().value;
    double total_error = heap.top().error;

    int splits = 0;
    while (total_error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_value)) &&
           splits < cfg.max_subdivisions) {
        detail::Panel worst = heap.top();
        heap.pop();
        if (worst.b - worst.a <= std::abs(worst.a) * 1e-15 + 1e-300) {
            // cannot refine further in double precision
            heap.push(detail::Panel{worst.a, worst.b, worst.value, 0.0});
            total_error -= worst.error;
            continue;
        }
        double m = 0.5 * (worst.a + worst.b);
        detail::Panel left = make_panel(worst.a, m);
        detail::Panel right = make_panel(m, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++splits;
    }

    // Re-sum panels in position order for a reproducible result.
    std::vector<detail::Panel> panels;
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const detail::Panel& p, const detail::Panel& q) { return p.a < q.a; });
    double value = 0.0, error = 0.0;
    for (const auto& p : panels) {
        value += p.value;
        error += p.error;
    }
    bool ok = error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
    return {value, error, ok, evals};
}

// Integrates f(r) over [0, r_max); r_max may be infinite, in which case the
// tail is folded in through r = r0 + t/(1-t).
template <typename Fn>
QuadResult integrate_radial(Fn&& f, double r_max,
                            const QuadratureConfig& cfg = QuadratureConfig::for_1d()) {
    if (std::isfinite(r_max)) return integrate_interval(f, 0.0, r_max, cfg);
    // split at 1 so the compactified part carries only the decaying tail
    const double r0 = 1.0;
    QuadResult head = integrate_interval(f, 0.0, r0, cfg);
    auto mapped = [&](double t) {
        double u = 1.0 - t;
        double r = r0 + t / u;
        return f(r) / (u * u);
    };
    QuadResult tail = integrate_interval(mapped, 0.0, 1.0, cfg);
    return {head.value + tail.value, head.error + tail.error,
            head.converged && tail.converged, head.evaluations + tail.evaluations};
}

namespace detail {

// Adaptive trapezoid over one period; spectrally accurate for smooth
// periodic integrands, doubling reuses previous evaluations.
template <typename Fn>
QuadResult angular_integral(Fn&& f, double rel_tol, double abs_tol, int max_doublings = 11,
                            int n0 = 16) {
    long evals = 0;
    double sum = 0.0;
    for (int i = 0; i < n0; ++i) sum += f(2.0 * pi * i / n0);
    evals += n0;
    double prev = sum * (2.0 * pi / n0);
    int n = n0;
    for (int d = 0; d < max_doublings; ++d) {
        for (int i = 0; i < n; ++i) sum += f(2.0 * pi * (i + 0.5) / n);
        evals += n;
        n *= 2;
        double cur = sum * (2.0 * pi / n);
        double err = std::abs(cur - prev);
        if (err <= std::max(abs_tol, rel_tol * std::abs(cur)))
            return {cur, err, true, evals};
        prev = cur;
    }
    return {prev, std::abs(prev), false, evals};
}

} // namespace detail

// Integral of f over the annulus {r_lo <= |z - center| <= r_hi} with respect
// to Lebesgue area measure.  Polar tensor rule: adaptive radial panels around
// an adaptive trapezoid in the angle.
template <typename Fn>
QuadResult integrate_annulus(Fn&& f, cplx center, double r_lo, double r_hi,
                             const QuadratureConfig& cfg = QuadratureConfig::for_2d()) {
    long ang_evals = 0;
    bool ang_ok = true;
    double ang_rel = cfg.rel_tol * 0.1;
    double ang_abs = cfg.abs_tol * 0.1;
    auto ring = [&](double r) {
        auto g = [&](double th) { return f(center + std::polar(r, th)); };
        QuadResult a = detail::angular_integral(g, ang_rel, ang_abs / (r + 1.0));
        ang_evals += a.evaluations;
        ang_ok = ang_ok && a.converged;
        return r * a.value;
    };
    QuadResult res;
    if (std::isfinite(r_hi)) {
        res = integrate_interval(ring, r_lo, r_hi, cfg);
    } else {
        auto mapped = [&](double t) {
            double u = 1.0 - t;
            double r = r_lo + 1.0 + t / u;
            return ring(r) / (u * u);
        };
        QuadResult head = integrate_interval(ring, r_lo, r_lo + 1.0, cfg);
        QuadResult tail = integrate_interval(mapped, 0.0, 1.0, cfg);
        res = {head.value + tail.value, head.error + tail.error,
               head.converged && tail.converged, head.evaluations + tail.evaluations};
    }
    res.converged = res.converged && ang_ok;
    res.evaluations += ang_evals;
    return res;
}

// Integral of f over the disk |z - center| <= radius (Lebesgue area measure).
template <typename Fn>
QuadResult integrate_disk(Fn&& f, cplx center, double radius,
                          const QuadratureConfig& cfg = QuadratureConfig::for_2d()) {
    return integrate_annulus(f, center, 0.0, radius, cfg);
}

// Pair integral \int_{|z|<=R} \int_{C} f(z, w) dw dz for integrands
// concentrated near the diagonal at scale `inner_scale` (= 1/sqrt(rho)):
// the inner variable is rescaled as w = z + inner_scale * s with |s| capped
// at inner_span.  The reported error adds the worst inner estimate scaled by
// the outer measure.
template <typename Fn>
QuadResult integrate_pair(Fn&& f, double outer_radius, double inner_scale, double inner_span,
                          const QuadratureConfig& cfg = QuadratureConfig::for_pair()) {
    QuadratureConfig inner_cfg = cfg;
    inner_cfg.rel_tol = cfg.rel_tol * 0.3;
    inner_cfg.max_subdivisions = std::max(100, cfg.max_subdivisions / 4);
    double worst_inner = 0.0;
    bool inner_ok = true;
    long inner_evals = 0;
    const double jac = inner_scale * inner_scale;
    auto outer_integrand = [&](cplx z) {
        QuadResult in = integrate_disk(
            [&](cplx s) { return f(z, z + inner_scale * s); }, cplx(0.0, 0.0), inner_span,
            inner_cfg);
        worst_inner = std::max(worst_inner, in.error);
        inner_ok = inner_ok && in.converged;
        inner_evals += in.evaluations;
        return jac * in.value;
    };
    QuadResult out = integrate_disk(outer_integrand, cplx(0.0, 0.0), outer_radius, cfg);
    out.error += worst_inner * jac * pi * outer_radius * outer_radius;
    out.converged = out.converged && inner_ok;
    out.evaluations += inner_evals;
    return out;
}

} // namespace invdpp
