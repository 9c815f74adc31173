#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bfset/density.hpp"
#include "bfset/errors.hpp"
#include "bfset/interval.hpp"
#include "bfset/quadrature.hpp"
#include "bfset/sampling.hpp"

namespace bfset {

// BF is oriented alternative over null. Both log-marginals are carried so
// either orientation is recoverable.
struct EvidenceReport {
    double bf = 1.0;
    double prior_odds = 1.0;     // p(H1)/p(H0)
    double posterior_odds = 1.0; // p(H1|x)/p(H0|x)
    double p_h0_post = 0.5;
    double p_h1_post = 0.5;
    double log_marginal_h0 = 0.0;
    double log_marginal_h1 = 0.0;
    bool decisive = false; // a hypothesis was annihilated by the data
};

struct AnalysisState {
    MixturePrior mix;
    SamplingModel model;
    std::vector<std::string> history;

    AnalysisState(MixturePrior m, SamplingModel mod, std::vector<std::string> hist = {})
        : mix(std::move(m)), model(std::move(mod)), history(std::move(hist)) {
        if (set_difference(mix.within_h0.support(), mix.h0).measure() > 0.0)
            throw ConfigError("within-H0 density support exceeds the H0 set");
        if (set_difference(mix.within_h1.support(), mix.h1).measure() > 0.0)
            throw ConfigError("within-H1 density support exceeds the H1 set");
    }
};

namespace detail {

// Fast per-theta log-likelihood closure built on sufficient statistics.
inline std::function<double(double)> loglik_fn(const SamplingModel& m, const DataBatch& data) {
    if (m.kind == ModelKind::NormalKnownSigma) {
        const double n = static_cast<double>(data.size());
        double sum = 0.0, sumsq = 0.0;
        for (double x : data.observations) { sum += x; sumsq += x * x; }
        const double xbar = n > 0 ? sum / n : 0.0;
        const double ss = sumsq - n * xbar * xbar;
        const double c = -0.5 * n * std::log(2.0 * 3.14159265358979323846 * m.sigma * m.sigma) -
                         ss / (2.0 * m.sigma * m.sigma);
        const double sigma2 = m.sigma * m.sigma;
        return [n, xbar, c, sigma2](double theta) {
            const double d = theta - xbar;
            return c - n * d * d / (2.0 * sigma2);
        };
    }
    const CountStat st = count_stat(m, data);
    return [st](double theta) {
        double ll = st.log_comb;
        if (st.successes > 0) ll += st.successes * std::log(theta);
        if (st.failures > 0) ll += st.failures * std::log1p(-theta);
        return ll;
    };
}

inline double beta_set_mass(double a, double b, const HypothesisSet& set) {
    double m = 0.0;
    for (const auto& iv : set.intervals()) {
        if (iv.is_point()) continue;
        m += boost::math::ibeta(a, b, iv.hi) - boost::math::ibeta(a, b, iv.lo);
    }
    return m;
}

inline double normal_set_mass(double mean, double sd, const HypothesisSet& set) {
    double m = 0.0;
    for (const auto& iv : set.intervals()) {
        if (iv.is_point()) continue;
        m += normal_cdf(iv.hi, mean, sd) - normal_cdf(iv.lo, mean, sd);
    }
    return m;
}

struct NormalPosterior {
    double mean;
    double sd;
    double log_marginal_unrestricted;
};

inline NormalPosterior normal_conjugate(double mu0, double tau0, double sigma,
                                        const DataBatch& data) {
    const double n = static_cast<double>(data.size());
    double sum = 0.0, sumsq = 0.0;
    for (double x : data.observations) { sum += x; sumsq += x * x; }
    const double prec = 1.0 / (tau0 * tau0) + n / (sigma * sigma);
    const double taun2 = 1.0 / prec;
    const double mun = taun2 * (mu0 / (tau0 * tau0) + sum / (sigma * sigma));
    const double log_m = -0.5 * n * std::log(2.0 * 3.14159265358979323846 * sigma * sigma) -
                         0.5 * std::log(tau0 * tau0 * prec) +
                         mun * mun / (2.0 * taun2) - sumsq / (2.0 * sigma * sigma) -
                         mu0 * mu0 / (2.0 * tau0 * tau0);
    return {mun, std::sqrt(taun2), log_m};
}

} // namespace detail

// log of the marginal likelihood  integral f(x|theta) pi(theta|H) dtheta
// over the density's support. Conjugate and truncated-conjugate inputs use
// closed forms; grids use quadrature in log-space.
inline double log_marginal_likelihood(const Density& within, const SamplingModel& model,
                                      const DataBatch& data) {
    if (data.model != model) throw ModelMismatch("data model differs from analysis model");
    if (data.empty()) return 0.0;
    switch (within.family()) {
        case Family::PointMass:
            return log_likelihood(model, data, within.location());
        case Family::Beta: {
            if (model.kind == ModelKind::NormalKnownSigma)
                throw ModelMismatch("beta prior paired with a normal sampling model");
            const CountStat st = count_stat(model, data);
            const double a = within.alpha(), b = within.beta_param();
            double lm = st.log_comb + log_beta(a + st.successes, b + st.failures) -
                        log_beta(a, b);
            if (within.truncated()) {
                const double post_mass =
                    detail::beta_set_mass(a + st.successes, b + st.failures, within.support());
                if (!(post_mass > 0.0)) return kNegInf;
                lm += std::log(post_mass) - within.log_support_mass();
            }
            return lm;
        }
        case Family::Normal: {
            if (model.kind != ModelKind::NormalKnownSigma)
                throw ModelMismatch("normal prior paired with a count sampling model");
            const auto post =
                detail::normal_conjugate(within.mean(), within.sd(), model.sigma, data);
            double lm = post.log_marginal_unrestricted;
            const double post_mass = detail::normal_set_mass(post.mean, post.sd, within.support());
            if (!(post_mass > 0.0)) return kNegInf;
            // within is always truncated to its (finite) support
            lm += std::log(post_mass) - within.log_support_mass();
            return lm;
        }
        case Family::Grid: {
            auto ll = detail::loglik_fn(model, data);
            double mx = kNegInf;
            const auto& nodes = within.grid_nodes();
            const auto& lw = within.grid_log_weights();
            for (std::size_t i = 0; i < nodes.size(); ++i)
                mx = std::max(mx, lw[i] + ll(nodes[i]));
            if (!std::isfinite(mx)) return kNegInf;
            const double z = integrate(
                [&within, &ll, mx](double t) { return std::exp(within.log_pdf(t) + ll(t) - mx); },
                within.support());
            return mx + std::log(z);
        }
    }
    return kNegInf;
}

// Bayes-rule posterior of a parameter density given a batch. Support never
// grows: the posterior of a density supported on a set stays on that set.
inline Density posterior_density(const Density& prior, const SamplingModel& model,
                                 const DataBatch& data) {
    if (data.model != model) throw ModelMismatch("data model differs from analysis model");
    if (data.empty()) return prior;
    switch (prior.family()) {
        case Family::PointMass: {
            if (!std::isfinite(log_likelihood(model, data, prior.location())))
                throw ZeroMassRestriction("likelihood annihilates the point-mass prior");
            return prior;
        }
        case Family::Beta: {
            if (model.kind == ModelKind::NormalKnownSigma)
                throw ModelMismatch("beta prior paired with a normal sampling model");
            const CountStat st = count_stat(model, data);
            Density post = Density::beta(prior.alpha() + st.successes,
                                         prior.beta_param() + st.failures);
            if (!prior.truncated()) return post;
            const double mass = detail::beta_set_mass(prior.alpha() + st.successes,
                                                      prior.beta_param() + st.failures,
                                                      prior.support());
            if (!(mass > kMassFloor))
                throw ZeroMassRestriction("posterior mass on the hypothesis set vanished");
            return post.with_support(prior.support(), std::log(mass));
        }
        case Family::Normal: {
            if (model.kind != ModelKind::NormalKnownSigma)
                throw ModelMismatch("normal prior paired with a count sampling model");
            const auto p = detail::normal_conjugate(prior.mean(), prior.sd(), model.sigma, data);
            const double mass = detail::normal_set_mass(p.mean, p.sd, prior.support());
            if (!(mass > kMassFloor))
                throw ZeroMassRestriction("posterior mass on the hypothesis set vanished");
            Density post = Density::normal(p.mean, p.sd, prior.space());
            return post.with_support(prior.support(), std::log(mass));
        }
        case Family::Grid: {
            auto ll = detail::loglik_fn(model, data);
            const auto& nodes = prior.grid_nodes();
            std::vector<double> lw(prior.grid_log_weights());
            for (std::size_t i = 0; i < nodes.size(); ++i) lw[i] += ll(nodes[i]);
            return Density::from_grid_data(prior.support(), prior.space(), nodes, std::move(lw),
                                           prior.grid_block_ends());
        }
    }
    return prior;
}

namespace detail {

inline EvidenceReport report_from_marginals(double p_h0, double p_h1, double lm0, double lm1) {
    EvidenceReport r;
    r.log_marginal_h0 = lm0;
    r.log_marginal_h1 = lm1;
    r.prior_odds = p_h1 / p_h0;
    const double log_bf = lm1 - lm0;
    r.bf = std::exp(log_bf);
    const double l0 = std::log(p_h0) + lm0;
    const double l1 = std::log(p_h1) + lm1;
    const double mx = std::max(l0, l1);
    if (!std::isfinite(mx)) throw ZeroMassRestriction("both marginal likelihoods vanished");
    const double w0 = std::exp(l0 - mx), w1 = std::exp(l1 - mx);
    r.p_h0_post = w0 / (w0 + w1);
    r.p_h1_post = w1 / (w0 + w1);
    r.posterior_odds = r.bf * r.prior_odds;
    r.decisive = !std::isfinite(log_bf);
    return r;
}

} // namespace detail

// One-shot Bayes factor for a batch against the state's current densities.
// Pure: the state is not modified.
inline EvidenceReport bayes_factor(const AnalysisState& state, const DataBatch& data) {
    const double lm0 = log_marginal_likelihood(state.mix.within_h0, state.model, data);
    const double lm1 = log_marginal_likelihood(state.mix.within_h1, state.model, data);
    return detail::report_from_marginals(state.mix.p_h0, state.mix.p_h1, lm0, lm1);
}

// Set-based route: update the overall prior by Bayes rule, read hypothesis
// probabilities off the posterior by integration, and express the BF as the
// ratio of posterior to prior odds. Mathematically identical to
// bayes_factor(decompose(pi, h0, h1), data).
inline EvidenceReport set_based_bayes_factor(const Density& pi, const HypothesisSet& h0,
                                             const HypothesisSet& h1, const SamplingModel& model,
                                             const DataBatch& data) {
    const HypothesisSet overlap = set_intersection(h0, h1);
    if (overlap.measure() > 0.0)
        throw ConfigError("set-based Bayes factor requires measure-disjoint hypotheses");
    const double p0 = pi.mass_on(h0);
    const double p1 = pi.mass_on(h1);
    if (std::abs(p0 + p1 - 1.0) > kDecomposeMassTol)
        throw MassOutsideHypotheses("prior mass outside the hypothesis sets exceeds tolerance");
    if (!(p0 > kMassFloor) || !(p1 > kMassFloor))
        throw ZeroMassRestriction("a hypothesis carries no prior mass");
    const Density post = posterior_density(pi, model, data);
    const double q0 = post.mass_on(h0);
    const double q1 = post.mass_on(h1);
    const double log_total = log_marginal_likelihood(pi, model, data);
    EvidenceReport r;
    r.prior_odds = p1 / p0;
    r.p_h0_post = q0 / (q0 + q1);
    r.p_h1_post = q1 / (q0 + q1);
    r.posterior_odds = q1 / q0;
    r.bf = (q1 / q0) / (p1 / p0);
    r.log_marginal_h0 = log_total + std::log(q0) - std::log(p0);
    r.log_marginal_h1 = log_total + std::log(q1) - std::log(p1);
    r.decisive = !std::isfinite(std::log(r.bf));
    return r;
}

// Full consistent update (Figure-3a semantics): hypothesis probabilities via
// the Bayes factor, within-hypothesis densities via Bayes rule, batch label
// appended to the history.
inline std::pair<AnalysisState, EvidenceReport> update_state(const AnalysisState& state,
                                                             const DataBatch& data) {
    const EvidenceReport rep = bayes_factor(state, data);
    Density w0 = posterior_density(state.mix.within_h0, state.model, data);
    Density w1 = posterior_density(state.mix.within_h1, state.model, data);
    MixturePrior mix(rep.p_h0_post, rep.p_h1_post, std::move(w0), std::move(w1), state.mix.h0,
                     state.mix.h1);
    std::vector<std::string> hist = state.history;
    hist.push_back(data.label.empty() ? "batch" : data.label);
    return {AnalysisState(std::move(mix), state.model, std::move(hist)), rep};
}

// BF for a follow-up batch, evaluated with the already-updated densities.
inline EvidenceReport sequential_bayes_factor(const AnalysisState& state_after_x,
                                              const DataBatch& y) {
    return bayes_factor(state_after_x, y);
}

struct InconsistencyDiagnostics {
    EvidenceReport inconsistent_report; // BF for y from never-updated densities
    double consistent_posterior_odds = 1.0;
    double inconsistent_posterior_odds = 1.0;
    double discrepancy = 0.0; // relative difference of the two final odds
    bool is_consistent = false;
};

// The deliberately wrong path (Figure-3b semantics): the second batch is
// scored against the initial within-hypothesis densities even though x was
// already absorbed. Diagnostic only, never the default flow.
inline InconsistencyDiagnostics inconsistent_path(const AnalysisState& initial,
                                                  const DataBatch& x, const DataBatch& y) {
    auto [state_x, rep_x] = update_state(initial, x);
    auto [state_xy, rep_y] = update_state(state_x, y);

    const double lm0 = log_marginal_likelihood(initial.mix.within_h0, initial.model, y);
    const double lm1 = log_marginal_likelihood(initial.mix.within_h1, initial.model, y);
    EvidenceReport bad =
        detail::report_from_marginals(rep_x.p_h0_post, rep_x.p_h1_post, lm0, lm1);

    InconsistencyDiagnostics d;
    d.inconsistent_report = bad;
    d.consistent_posterior_odds = rep_y.posterior_odds;
    d.inconsistent_posterior_odds = bad.posterior_odds;
    d.discrepancy = std::abs(bad.posterior_odds - rep_y.posterior_odds) /
                    rep_y.posterior_odds;
    d.is_consistent = d.discrepancy <= 1e-9;
    return d;
}

struct ConsistencyReport {
    double max_prob_diff = 0.0;
    double sup_density_diff = 0.0; // relative to the peak posterior density
    double tolerance_prob = 1e-9;
    double tolerance_density = 1e-6;
    bool pass = false;
};

// Figure-2 check: updating with x then y must match one update with the
// merged batch.
inline ConsistencyReport check_consistency(const AnalysisState& initial, const DataBatch& x,
                                           const DataBatch& y, std::size_t probe_points = 1001) {
    auto [state_x, rep_x] = update_state(initial, x);
    auto [seq, rep_y] = update_state(state_x, y);
    auto [merged, rep_m] = update_state(initial, merge(x, y));

    ConsistencyReport r;
    const bool grid_path = initial.mix.within_h0.family() == Family::Grid ||
                           initial.mix.within_h1.family() == Family::Grid;
    r.tolerance_prob = grid_path ? 1e-6 : 1e-9;
    r.tolerance_density = grid_path ? 1e-5 : 1e-6;
    r.max_prob_diff = std::max(std::abs(seq.mix.p_h0 - merged.mix.p_h0),
                               std::abs(seq.mix.p_h1 - merged.mix.p_h1));

    const ParameterSpace& sp = initial.mix.within_h0.space();
    double sup_diff = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < probe_points; ++i) {
        const double t = sp.lower + (sp.upper - sp.lower) * static_cast<double>(i) /
                                        static_cast<double>(probe_points - 1);
        for (int h = 0; h < 2; ++h) {
            const Density& a = h == 0 ? seq.mix.within_h0 : seq.mix.within_h1;
            const Density& b = h == 0 ? merged.mix.within_h0 : merged.mix.within_h1;
            if (a.family() == Family::PointMass) continue;
            const double fa = a.pdf(t), fb = b.pdf(t);
            if (std::isfinite(fa)) peak = std::max(peak, fa);
            if (std::isfinite(fa) && std::isfinite(fb))
                sup_diff = std::max(sup_diff, std::abs(fa - fb));
        }
    }
    r.sup_density_diff = peak > 0.0 ? sup_diff / peak : 0.0;
    r.pass = r.max_prob_diff <= r.tolerance_prob && r.sup_density_diff <= r.tolerance_density;
    return r;
}

struct ParadoxReport {
    EvidenceReport report;
    double posterior_h0_alpha = 0.0;
    double posterior_h0_beta = 0.0;
    double posterior_h1_alpha = 0.0;
    double posterior_h1_beta = 0.0;
    bool posterior_h0_equals_prior_h1 = false;
    HypothesisSet falsifiers_of_h0; // empty: identical supports
    HypothesisSet falsifiers_of_h1;
    bool contrast_informable = true; // false when both falsifier classes are empty
};

// The worked beta-binomial paradox: uniform vs Beta(15,7) on the identical
// support [0,1], equal prior probabilities, 14 successes in 20 trials.
// Consistent updating turns the null into exactly the prior alternative,
// and the support view shows why the contrast was pointless to begin with.
inline ParadoxReport paradox_demo() {
    const ParameterSpace space = ParameterSpace::unit();
    const HypothesisSet full({Interval(0.0, 1.0)});
    MixturePrior mix(0.5, 0.5, Density::beta(1.0, 1.0), Density::beta(15.0, 7.0), full, full);
    const SamplingModel model = SamplingModel::binomial(20);
    AnalysisState state(mix, model);
    const DataBatch data = make_batch(model, {14.0}, "s=14/20");

    auto [post, rep] = update_state(state, data);
    ParadoxReport p;
    p.report = rep;
    p.posterior_h0_alpha = post.mix.within_h0.alpha();
    p.posterior_h0_beta = post.mix.within_h0.beta_param();
    p.posterior_h1_alpha = post.mix.within_h1.alpha();
    p.posterior_h1_beta = post.mix.within_h1.beta_param();
    p.posterior_h0_equals_prior_h1 =
        p.posterior_h0_alpha == 15.0 && p.posterior_h0_beta == 7.0;
    p.falsifiers_of_h0 = falsifier_class(full, full);
    p.falsifiers_of_h1 = falsifier_class(full, full);
    p.contrast_informable = !(p.falsifiers_of_h0.empty() && p.falsifiers_of_h1.empty());
    return p;
}

} // namespace bfset
