#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "bfset/errors.hpp"
#include "bfset/interval.hpp"
#include "bfset/quadrature.hpp"

namespace bfset {

inline constexpr double kMassFloor = 1e-12;
inline constexpr double kDecomposeMassTol = 1e-6;
inline constexpr std::size_t kDefaultGridNodes = 257;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// log-weight clamp for nodes where the source density vanishes
inline constexpr double kLogFloor = -745.0;

inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

inline double normal_cdf(double x, double mean, double sd) {
    return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

enum class Family { Beta, Normal, PointMass, Grid };

namespace detail {

// Log-density samples on Chebyshev-clustered nodes, one block per support
// interval. Within a block the log-density is split as
//   log f(theta) = p_lo log(theta - a) + p_hi log(b - theta) + r(theta)
// with the endpoint exponents fitted from the nodes nearest each end and the
// residual r interpolated by piecewise cubic Hermite. The power terms make
// beta-kernel tails exact, which plain polynomial interpolation of the
// log-density cannot achieve near an endpoint singularity.
struct GridData {
    std::vector<double> nodes;
    std::vector<double> log_weights;
    std::vector<std::size_t> block_ends; // one past the last node of each block

    // derived per node
    std::vector<double> resid;
    std::vector<double> slopes;
    // derived per block
    std::vector<double> block_lo, block_hi, p_lo, p_hi;

    // Exponent of the power law through two nodes, measured against the
    // endpoint distance; exact for f ~ (distance)^p.
    static double pair_exponent(double g0, double g1, double d0, double d1) {
        return (g1 - g0) / (std::log(d1) - std::log(d0));
    }

    // Fit the endpoint exponents of one block. A candidate is accepted only
    // when two adjacent node pairs agree on it; an analytic (non-power)
    // log-density fails that test and keeps exponent zero, so no spurious
    // singularity is introduced at a plain truncation cut.
    void fit_exponents(std::size_t begin, std::size_t end, double lo, double hi, double& plo,
                       double& phi) const {
        plo = phi = 0.0;
        if (end - begin < 6) return;
        const std::size_t i0 = begin, i1 = begin + 1, i2 = begin + 2;
        const std::size_t j0 = end - 1, j1 = end - 2, j2 = end - 3;
        for (std::size_t k : {i0, i1, i2, j0, j1, j2})
            if (log_weights[k] <= kLogFloor + 1.0) return;
        auto dl = [&](std::size_t i) { return nodes[i] - lo; };
        auto dh = [&](std::size_t i) { return hi - nodes[i]; };
        // Agreement must be relative: a genuine power law puts both pair
        // estimates within a fraction of a percent of each other, while a
        // smooth log-density over evenly spaced nodes yields small estimates
        // that disagree by the ratio of the log distance gaps (~70%).
        auto accept = [](double a, double b) {
            return std::isfinite(a) && std::isfinite(b) && std::abs(a) >= 0.01 &&
                   std::abs(a) <= 200.0 &&
                   std::abs(a - b) <= std::max(0.1 * std::abs(a), 2e-3);
        };
        double e1 = 0.0, e2 = 0.0, f1 = 0.0, f2 = 0.0;
        bool try_lo = true, try_hi = true;
        for (int pass = 0; pass < 2; ++pass) {
            plo = phi = 0.0;
            for (int iter = 0; iter < 3; ++iter) {
                if (try_lo) {
                    auto g = [&](std::size_t i) {
                        return log_weights[i] - phi * std::log(dh(i));
                    };
                    e1 = pair_exponent(g(i0), g(i1), dl(i0), dl(i1));
                    e2 = pair_exponent(g(i1), g(i2), dl(i1), dl(i2));
                    if (!std::isfinite(e1)) e1 = 0.0;
                    plo = e1;
                }
                if (try_hi) {
                    auto h = [&](std::size_t i) {
                        return log_weights[i] - plo * std::log(dl(i));
                    };
                    f1 = pair_exponent(h(j0), h(j1), dh(j0), dh(j1));
                    f2 = pair_exponent(h(j1), h(j2), dh(j1), dh(j2));
                    if (!std::isfinite(f1)) f1 = 0.0;
                    phi = f1;
                }
            }
            const bool ok_lo = !try_lo || accept(e1, e2);
            const bool ok_hi = !try_hi || accept(f1, f2);
            if (ok_lo && ok_hi) break;
            // refit the surviving end without the rejected one's influence
            try_lo = try_lo && ok_lo;
            try_hi = try_hi && ok_hi;
        }
        if (!try_lo || !accept(e1, e2)) plo = 0.0;
        if (!try_hi || !accept(f1, f2)) phi = 0.0;
    }

    // Fit exponents, form residuals and compute residual slopes. Block
    // bounds are the support intervals, in order.
    void prepare(const std::vector<Interval>& blocks) {
        const std::size_t nb = block_ends.size();
        block_lo.assign(nb, 0.0);
        block_hi.assign(nb, 0.0);
        p_lo.assign(nb, 0.0);
        p_hi.assign(nb, 0.0);
        resid = log_weights;
        std::size_t begin = 0;
        for (std::size_t b = 0; b < nb; ++b) {
            const std::size_t end = block_ends[b];
            block_lo[b] = blocks[b].lo;
            block_hi[b] = blocks[b].hi;
            fit_exponents(begin, end, block_lo[b], block_hi[b], p_lo[b], p_hi[b]);
            if (p_lo[b] != 0.0 || p_hi[b] != 0.0) {
                for (std::size_t i = begin; i < end; ++i)
                    resid[i] -= p_lo[b] * std::log(nodes[i] - block_lo[b]) +
                                p_hi[b] * std::log(block_hi[b] - nodes[i]);
            }
            begin = end;
        }
        compute_slopes();
    }

    // Derivative of the local cubic Lagrange fit through a 4-node window,
    // evaluated at the node itself. Keeps the Hermite interpolant at O(h^4).
    void compute_slopes() {
        slopes.assign(nodes.size(), 0.0);
        std::size_t begin = 0;
        for (std::size_t end : block_ends) {
            const std::size_t n = end - begin;
            if (n == 1) { begin = end; continue; }
            for (std::size_t i = begin; i < end; ++i) {
                if (n < 4) {
                    const std::size_t j = std::min(std::max(i, begin + 1), end - 1);
                    slopes[i] = (resid[j] - resid[j - 1]) / (nodes[j] - nodes[j - 1]);
                    continue;
                }
                std::size_t w = i >= begin + 1 ? i - 1 : begin;
                w = std::min(w, end - 4);
                double d = 0.0;
                for (std::size_t j = w; j < w + 4; ++j) {
                    if (j == i) {
                        double s = 0.0;
                        for (std::size_t k = w; k < w + 4; ++k)
                            if (k != i) s += 1.0 / (nodes[i] - nodes[k]);
                        d += resid[j] * s;
                    } else {
                        double num = 1.0, den = 1.0;
                        for (std::size_t k = w; k < w + 4; ++k) {
                            if (k != j && k != i) num *= nodes[i] - nodes[k];
                            if (k != j) den *= nodes[j] - nodes[k];
                        }
                        d += resid[j] * num / den;
                    }
                }
                slopes[i] = d;
            }
            begin = end;
        }
    }

    // log-density within block b at theta (inside the block's interval)
    double eval_block(std::size_t b, double theta) const {
        const std::size_t begin = b == 0 ? 0 : block_ends[b - 1];
        const std::size_t end = block_ends[b];
        double power = 0.0;
        if (p_lo[b] != 0.0) {
            const double d = theta - block_lo[b];
            if (d <= 0.0)
                return p_lo[b] > 0.0 ? kNegInf : std::numeric_limits<double>::infinity();
            power += p_lo[b] * std::log(d);
        }
        if (p_hi[b] != 0.0) {
            const double d = block_hi[b] - theta;
            if (d <= 0.0)
                return p_hi[b] > 0.0 ? kNegInf : std::numeric_limits<double>::infinity();
            power += p_hi[b] * std::log(d);
        }
        const std::size_t n = end - begin;
        if (n == 1) return resid[begin] + power;
        if (theta <= nodes[begin])
            return resid[begin] + slopes[begin] * (theta - nodes[begin]) + power;
        if (theta >= nodes[end - 1])
            return resid[end - 1] + slopes[end - 1] * (theta - nodes[end - 1]) + power;
        // binary search for the segment
        std::size_t lo = begin, hi = end - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (nodes[mid] <= theta) lo = mid; else hi = mid;
        }
        const double h = nodes[hi] - nodes[lo];
        const double t = (theta - nodes[lo]) / h;
        const double y0 = resid[lo], y1 = resid[hi];
        const double d0 = slopes[lo] * h, d1 = slopes[hi] * h;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 +
               (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * d1 + power;
    }
};

inline std::vector<double> chebyshev_nodes(double a, double b, std::size_t n) {
    std::vector<double> xs(n);
    const double m = 0.5 * (a + b), r = 0.5 * (b - a);
    const double pi = 3.14159265358979323846;
    for (std::size_t k = 0; k < n; ++k)
        xs[k] = m - r * std::cos(pi * (2.0 * k + 1.0) / (2.0 * n));
    return xs;
}

} // namespace detail

// A normalized parameter distribution. Conjugate families keep their
// parameters exactly; restriction to a strict subset keeps the conjugate
// form plus the support and a cached log normalizing mass, so truncated
// conjugates stay closed-form under Bayes updates. Grid is the generic
// numeric representation.
class Density {
  public:
    Family family() const { return family_; }
    const ParameterSpace& space() const { return space_; }
    const HypothesisSet& support() const { return support_; }
    bool truncated() const { return truncated_; }

    double alpha() const { return p1_; }
    double beta_param() const { return p2_; }
    double mean() const { return p1_; }
    double sd() const { return p2_; }
    double location() const { return p1_; }
    double log_support_mass() const { return log_mass_; }
    const std::vector<double>& grid_nodes() const { return grid_.nodes; }
    const std::vector<double>& grid_log_weights() const { return grid_.log_weights; }

    static Density beta(double alpha, double beta) {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw ConfigError("beta density requires alpha, beta > 0");
        Density d;
        d.family_ = Family::Beta;
        d.p1_ = alpha;
        d.p2_ = beta;
        d.space_ = ParameterSpace::unit();
        d.support_ = HypothesisSet({Interval(0.0, 1.0)});
        return d;
    }

    static Density normal(double mean, double sd, const ParameterSpace& space) {
        if (!(sd > 0.0)) throw ConfigError("normal density requires sd > 0");
        Density d;
        d.family_ = Family::Normal;
        d.p1_ = mean;
        d.p2_ = sd;
        d.space_ = space;
        d.support_ = HypothesisSet({Interval(space.lower, space.upper)});
        // a normal on a finite space is implicitly truncated to it
        d.truncated_ = true;
        d.log_mass_ = std::log(normal_cdf(space.upper, mean, sd) -
                               normal_cdf(space.lower, mean, sd));
        return d;
    }

    static Density point_mass(double location, const ParameterSpace& space) {
        if (!space.contains(location))
            throw OutOfSpace("point mass location outside parameter space");
        Density d;
        d.family_ = Family::PointMass;
        d.p1_ = location;
        d.space_ = space;
        d.support_ = HypothesisSet({Interval(location, location)});
        return d;
    }

    // Build a grid density sampling `log_f` (an unnormalized log-density)
    // over `support`, then renormalize so it integrates to one.
    static Density grid_from(const std::function<double(double)>& log_f,
                             const HypothesisSet& support, const ParameterSpace& space,
                             std::size_t nodes_per_interval = kDefaultGridNodes) {
        Density d;
        d.family_ = Family::Grid;
        d.space_ = space;
        d.support_ = support;
        for (const auto& iv : support.intervals()) {
            if (iv.is_point())
                throw ConfigError("grid density cannot carry a point interval");
            auto xs = detail::chebyshev_nodes(iv.lo, iv.hi, nodes_per_interval);
            for (double x : xs) {
                d.grid_.nodes.push_back(x);
                double v = log_f(x);
                if (!std::isfinite(v)) v = kLogFloor;
                d.grid_.log_weights.push_back(std::max(v, kLogFloor));
            }
            d.grid_.block_ends.push_back(d.grid_.nodes.size());
        }
        d.grid_.prepare(support.intervals());
        d.renormalize_grid();
        return d;
    }

    static Density from_grid_data(const HypothesisSet& support, const ParameterSpace& space,
                                  std::vector<double> nodes, std::vector<double> log_weights,
                                  std::vector<std::size_t> block_ends) {
        Density d;
        d.family_ = Family::Grid;
        d.space_ = space;
        d.support_ = support;
        d.grid_.nodes = std::move(nodes);
        d.grid_.log_weights = std::move(log_weights);
        d.grid_.block_ends = std::move(block_ends);
        d.grid_.prepare(support.intervals());
        d.renormalize_grid();
        return d;
    }

    const std::vector<std::size_t>& grid_block_ends() const { return grid_.block_ends; }

    double log_pdf(double theta) const {
        switch (family_) {
            case Family::Beta: {
                if (!support_.contains(theta)) return kNegInf;
                if (theta < 0.0 || theta > 1.0) return kNegInf;
                double v = xlogy(p1_ - 1.0, theta) + xlogy(p2_ - 1.0, 1.0 - theta) -
                           log_beta(p1_, p2_);
                return v - (truncated_ ? log_mass_ : 0.0);
            }
            case Family::Normal: {
                if (!support_.contains(theta)) return kNegInf;
                const double z = (theta - p1_) / p2_;
                const double v = -0.5 * z * z - std::log(p2_) - 0.918938533204672742; // log sqrt(2 pi)
                return v - (truncated_ ? log_mass_ : 0.0);
            }
            case Family::PointMass:
                return theta == p1_ ? std::numeric_limits<double>::infinity() : kNegInf;
            case Family::Grid: {
                std::size_t block = 0;
                for (const auto& iv : support_.intervals()) {
                    if (iv.contains(theta)) return grid_.eval_block(block, theta);
                    ++block;
                }
                return kNegInf;
            }
        }
        return kNegInf;
    }

    double pdf(double theta) const { return std::exp(log_pdf(theta)); }

    // Probability mass the density places on `set` (closed-form where the
    // family allows it, quadrature otherwise). Point intervals carry no
    // mass except under a point-mass atom.
    double mass_on(const HypothesisSet& set) const {
        const HypothesisSet eff = set_intersection(support_, set);
        if (eff.empty()) return 0.0;
        switch (family_) {
            case Family::PointMass:
                return set.contains(p1_) ? 1.0 : 0.0;
            case Family::Beta: {
                double m = 0.0;
                for (const auto& iv : eff.intervals()) {
                    if (iv.is_point()) continue;
                    m += boost::math::ibeta(p1_, p2_, iv.hi) - boost::math::ibeta(p1_, p2_, iv.lo);
                }
                return truncated_ ? m / std::exp(log_mass_) : m;
            }
            case Family::Normal: {
                double m = 0.0;
                for (const auto& iv : eff.intervals()) {
                    if (iv.is_point()) continue;
                    m += normal_cdf(iv.hi, p1_, p2_) - normal_cdf(iv.lo, p1_, p2_);
                }
                return truncated_ ? m / std::exp(log_mass_) : m;
            }
            case Family::Grid:
                return integrate([this](double t) { return pdf(t); }, eff);
        }
        return 0.0;
    }

    bool is_conjugate() const { return family_ == Family::Beta || family_ == Family::Normal; }

    bool same_conjugate_base(const Density& o) const {
        return family_ == o.family_ && is_conjugate() && p1_ == o.p1_ && p2_ == o.p2_;
    }

    // used by restrict()/updates
    Density with_support(const HypothesisSet& sup, double log_mass) const {
        Density d = *this;
        d.support_ = sup;
        d.truncated_ = true;
        d.log_mass_ = log_mass;
        return d;
    }

  private:
    void renormalize_grid() {
        // max-shifted so exp never overflows
        double mx = kNegInf;
        for (double w : grid_.log_weights) mx = std::max(mx, w);
        const double z = integrate(
            [this, mx](double t) { return std::exp(log_pdf(t) - mx); }, support_,
            QuadratureOptions{1e-11, 0.0, 40});
        const double logz = mx + std::log(z);
        for (double& w : grid_.log_weights) w -= logz;
        for (double& r : grid_.resid) r -= logz;
    }

    Family family_ = Family::Beta;
    double p1_ = 1.0;
    double p2_ = 1.0;
    ParameterSpace space_;
    HypothesisSet support_;
    bool truncated_ = false;
    double log_mass_ = 0.0;
    detail::GridData grid_;
};

struct Restriction {
    Density density;
    double mass = 0.0;
};

// Renormalized restriction of `pi` to `set`, plus the mass pi placed there.
inline Restriction restrict_density(const Density& pi, const HypothesisSet& set) {
    if (pi.family() == Family::PointMass) {
        if (!set.contains(pi.location()))
            throw ZeroMassRestriction("point mass outside restriction set");
        return {pi, 1.0};
    }
    const HypothesisSet eff = set_intersection(pi.support(), set);
    const double mass = pi.mass_on(set);
    if (!(mass > kMassFloor))
        throw ZeroMassRestriction("restriction mass below floor");
    if (eff == pi.support()) return {pi, mass >= 1.0 ? 1.0 : mass};
    if (pi.is_conjugate()) {
        const double base_mass = pi.truncated()
                                     ? mass * std::exp(pi.log_support_mass())
                                     : mass;
        return {pi.with_support(eff, std::log(base_mass)), mass};
    }
    // grid: keep the original nodes that survive the restriction, so no
    // re-interpolation error enters; resample only intervals left with too
    // few nodes
    const double log_mass = std::log(mass);
    std::vector<double> nodes, lw;
    std::vector<std::size_t> ends;
    bool deficient = false;
    {
        const auto& src_nodes = pi.grid_nodes();
        const auto& src_lw = pi.grid_log_weights();
        for (const auto& iv : eff.intervals()) {
            std::size_t count = 0;
            for (std::size_t i = 0; i < src_nodes.size(); ++i) {
                if (iv.contains(src_nodes[i])) {
                    nodes.push_back(src_nodes[i]);
                    lw.push_back(src_lw[i] - log_mass);
                    ++count;
                }
            }
            ends.push_back(nodes.size());
            if (count < 4) deficient = true;
        }
    }
    if (deficient) {
        Density g = Density::grid_from(
            [&pi, log_mass](double t) { return pi.log_pdf(t) - log_mass; }, eff, pi.space());
        return {std::move(g), mass};
    }
    Density g = Density::from_grid_data(eff, pi.space(), std::move(nodes), std::move(lw),
                                        std::move(ends));
    return {std::move(g), mass};
}

// Two-hypothesis mixture prior: the quadruple of hypothesis probabilities
// and within-hypothesis densities.
struct MixturePrior {
    double p_h0 = 0.5;
    double p_h1 = 0.5;
    Density within_h0;
    Density within_h1;
    HypothesisSet h0;
    HypothesisSet h1;

    MixturePrior(double p0, double p1, Density w0, Density w1, HypothesisSet s0,
                 HypothesisSet s1)
        : p_h0(p0), p_h1(p1), within_h0(std::move(w0)), within_h1(std::move(w1)),
          h0(std::move(s0)), h1(std::move(s1)) {
        if (std::abs(p_h0 + p_h1 - 1.0) > 1e-12)
            throw ConfigError("hypothesis probabilities must sum to 1");
        if (p_h0 < 0.0 || p_h1 < 0.0) throw ConfigError("negative hypothesis probability");
        if (h0.empty() || h1.empty()) throw ConfigError("hypotheses must be nonempty sets");
    }
};

// Overall prior density p(H0) pi(theta|H0) + p(H1) pi(theta|H1).
inline Density compose(const MixturePrior& mix) {
    const Density& w0 = mix.within_h0;
    const Density& w1 = mix.within_h1;
    // identical conjugate components collapse regardless of the weights
    if (w0.same_conjugate_base(w1) && w0.support() == w1.support() &&
        w0.truncated() == w1.truncated())
        return w0;
    // complementary restrictions of one conjugate base recombine exactly
    if (w0.same_conjugate_base(w1) && w0.truncated() && w1.truncated()) {
        const double m0 = std::exp(w0.log_support_mass());
        const double m1 = std::exp(w1.log_support_mass());
        if (std::abs(mix.p_h0 - m0 / (m0 + m1)) < 1e-9) {
            const HypothesisSet uni = set_union(w0.support(), w1.support(), w0.space());
            Density base = w0.family() == Family::Beta
                               ? Density::beta(w0.alpha(), w0.beta_param())
                               : Density::normal(w0.mean(), w0.sd(), w0.space());
            if (std::abs(m0 + m1 - 1.0) < 1e-12 && uni == base.support()) return base;
            return base.with_support(uni, std::log(m0 + m1));
        }
    }
    if (w0.family() == Family::PointMass || w1.family() == Family::PointMass)
        throw ConfigError("compose with point-mass components is not representable as a density");
    const HypothesisSet uni = set_union(w0.support(), w1.support(), w0.space());
    const double lp0 = std::log(mix.p_h0), lp1 = std::log(mix.p_h1);
    auto log_mix = [&](double t) {
        const double a = lp0 + w0.log_pdf(t);
        const double b = lp1 + w1.log_pdf(t);
        const double m = std::max(a, b);
        if (!std::isfinite(m)) return kNegInf;
        return m + std::log(std::exp(a - m) + std::exp(b - m));
    };
    // Reuse grid component nodes verbatim: grid values are exact there, so
    // the mixture picks up no re-interpolation error.
    std::vector<double> nodes;
    for (const Density* w : {&w0, &w1}) {
        if (w->family() == Family::Grid) {
            nodes.insert(nodes.end(), w->grid_nodes().begin(), w->grid_nodes().end());
        } else {
            for (const auto& iv : w->support().intervals()) {
                if (iv.is_point()) continue;
                auto xs = detail::chebyshev_nodes(iv.lo, iv.hi, kDefaultGridNodes);
                nodes.insert(nodes.end(), xs.begin(), xs.end());
            }
        }
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::vector<double> lw;
    std::vector<std::size_t> ends;
    std::vector<double> kept;
    for (const auto& iv : uni.intervals()) {
        for (double x : nodes)
            if (iv.contains(x)) {
                kept.push_back(x);
                lw.push_back(std::max(log_mix(x), kLogFloor));
            }
        ends.push_back(kept.size());
    }
    return Density::from_grid_data(uni, w0.space(), std::move(kept), std::move(lw),
                                   std::move(ends));
}

// Split an overall prior over two (measure-)disjoint hypothesis sets into
// hypothesis probabilities and within-hypothesis densities.
inline MixturePrior decompose(const Density& pi, const HypothesisSet& h0,
                              const HypothesisSet& h1) {
    const HypothesisSet overlap = set_intersection(h0, h1);
    if (overlap.measure() > 0.0)
        throw ConfigError("decompose requires hypotheses disjoint up to measure zero");
    const double p0 = pi.mass_on(h0);
    const double p1 = pi.mass_on(h1);
    if (std::abs(p0 + p1 - 1.0) > kDecomposeMassTol)
        throw MassOutsideHypotheses("prior mass outside the hypothesis sets exceeds tolerance");
    if (!(p0 > kMassFloor) || !(p1 > kMassFloor))
        throw ZeroMassRestriction("a hypothesis carries no prior mass");
    Restriction r0 = restrict_density(pi, h0);
    Restriction r1 = restrict_density(pi, h1);
    const double s = p0 + p1;
    return MixturePrior(p0 / s, p1 / s, std::move(r0.density), std::move(r1.density), h0, h1);
}

// Explicit grid conversion: the numeric path exerciser.
inline Density to_grid(const Density& d, std::size_t nodes_per_interval = kDefaultGridNodes) {
    if (d.family() == Family::Grid) return d;
    if (d.family() == Family::PointMass)
        throw ConfigError("point mass has no grid representation");
    return Density::grid_from([&d](double t) { return d.log_pdf(t); }, d.support(), d.space(),
                              nodes_per_interval);
}

} // namespace bfset
