#pragma once

#include <cmath>
#include <functional>

#include "bfset/errors.hpp"
#include "bfset/interval.hpp"

namespace bfset {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0; // purely relative by default so tiny integrals stay accurate
    int max_depth = 40;
};

namespace detail {

inline double eval_clamped(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : 0.0; // integrable endpoint singularities
}

inline double simpson(double fa, double fm, double fb, double h) {
    return (h / 6.0) * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               double scale, int depth, const QuadratureOptions& opt) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval_clamped(f, lm);
    const double frm = eval_clamped(f, rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || (m - a) == 0.0)
        return left + right + delta / 15.0;
    if (depth >= opt.max_depth) {
        // Depth exhausted: tolerate residuals that are negligible against
        // the integral's overall scale, otherwise report non-convergence.
        if (std::abs(delta) <= 15.0 * std::max(opt.abs_tol, 1e-9 * scale))
            return left + right + delta / 15.0;
        throw QuadratureNonConvergence("adaptive Simpson depth limit reached");
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, scale, depth + 1, opt) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, scale, depth + 1, opt);
}

} // namespace detail

// Adaptive composite Simpson over one interval. Runs a second pass when the
// first result shows the initial tolerance was scaled off a bad coarse
// estimate (peaked integrands fool the three-point starter).
inline double integrate_interval(const std::function<double(double)>& f, double a, double b,
                                 const QuadratureOptions& opt = {}) {
    if (a == b) return 0.0;
    const double fa = detail::eval_clamped(f, a);
    const double fb = detail::eval_clamped(f, b);
    const double fm = detail::eval_clamped(f, 0.5 * (a + b));
    const double whole = detail::simpson(fa, fm, fb, b - a);
    double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(whole));
    double result =
        detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, std::abs(whole), 0, opt);
    const double tol2 = std::max(opt.abs_tol, opt.rel_tol * std::abs(result));
    if (tol2 < 0.5 * tol)
        result = detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol2, std::abs(result), 0,
                                          opt);
    return result;
}

// Integrate one interval with the square-root substitution theta = a + t^2
// on the left half and theta = b - t^2 on the right half. This regularizes
// integrable endpoint singularities (beta kernels with shape < 1) that plain
// Simpson resolves too slowly.
inline double integrate_interval_regularized(const std::function<double(double)>& f, double a,
                                             double b, const QuadratureOptions& opt = {}) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    // t = 0 would hit 0 * inf for square-root singularities; an infinitesimal
    // inset recovers the correct limit value instead.
    constexpr double kInset = 1e-100;
    auto left = [&f, a](double t) {
        if (t == 0.0) t = kInset;
        return 2.0 * t * f(a + t * t);
    };
    auto right = [&f, b](double t) {
        if (t == 0.0) t = kInset;
        return 2.0 * t * f(b - t * t);
    };
    return integrate_interval(left, 0.0, std::sqrt(m - a), opt) +
           integrate_interval(right, 0.0, std::sqrt(b - m), opt);
}

// Integral of f over every interval of the set. Point intervals have
// Lebesgue measure zero and contribute nothing.
inline double integrate(const std::function<double(double)>& f, const HypothesisSet& set,
                        const QuadratureOptions& opt = {}) {
    double total = 0.0;
    for (const auto& iv : set.intervals()) {
        if (iv.is_point()) continue;
        total += integrate_interval_regularized(f, iv.lo, iv.hi, opt);
    }
    return total;
}

} // namespace bfset
