#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "bfset/engine.hpp"
#include "bfset/errors.hpp"
#include "bfset/interval.hpp"
#include "bfset/sampling.hpp"

namespace bfset {

struct TrajectorySpec {
    double theta_star = 0.5;
    MixturePrior initial;
    SamplingModel model;
    std::vector<std::size_t> n_schedule;
    std::size_t replications = 50;
    std::uint64_t seed = 1;

    TrajectorySpec(double th, MixturePrior init, SamplingModel m,
                   std::vector<std::size_t> schedule, std::size_t reps, std::uint64_t sd)
        : theta_star(th), initial(std::move(init)), model(std::move(m)),
          n_schedule(std::move(schedule)), replications(reps), seed(sd) {
        if (n_schedule.empty() || !std::is_sorted(n_schedule.begin(), n_schedule.end()) ||
            std::adjacent_find(n_schedule.begin(), n_schedule.end()) != n_schedule.end())
            throw ConfigError("n_schedule must be strictly increasing and nonempty");
        if (replications < 1) throw ConfigError("replications must be >= 1");
    }
};

struct TrajectoryPoint {
    std::size_t replication = 0;
    std::size_t n = 0;
    double log_bf = 0.0;
};

struct TrajectorySummary {
    std::size_t n = 0;
    double q05 = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, q95 = 0.0;
    double fraction_positive = 0.0;
};

struct TrajectoryResult {
    RegimeLabel regime = RegimeLabel::Overlap;
    std::vector<TrajectoryPoint> points;       // long format, (replication, n) order
    std::vector<TrajectorySummary> summaries;  // one per schedule entry
};

namespace detail {

inline double quantile(std::vector<double> xs, double q) {
    std::sort(xs.begin(), xs.end());
    const double pos = q * static_cast<double>(xs.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= xs.size()) return xs.back();
    const double frac = pos - static_cast<double>(i);
    return xs[i] * (1.0 - frac) + xs[i + 1] * frac;
}

} // namespace detail

// Single-shot BF trajectories: for every replication and schedule size,
// draw fresh data under theta_star and score it against the initial state.
// Boundary regimes are refused; their limits are undefined here.
inline TrajectoryResult run_trajectories(const TrajectorySpec& spec) {
    const ParameterSpace& space = spec.initial.within_h0.space();
    const RegimeLabel regime =
        classify_regime(spec.theta_star, spec.initial.h0, spec.initial.h1, space);
    if (regime == RegimeLabel::Boundary)
        throw OutOfSpace("theta_star lies on a hypothesis boundary; excluded from "
                         "asymptotic analysis");
    const AnalysisState state(spec.initial, spec.model);

    TrajectoryResult res;
    res.regime = regime;
    for (std::size_t r = 0; r < spec.replications; ++r) {
        for (std::size_t n : spec.n_schedule) {
            const std::uint64_t s = SplitMix64::mix(spec.seed, r, n);
            const DataBatch batch = simulate(spec.model, spec.theta_star, n, s);
            const EvidenceReport rep = bayes_factor(state, batch);
            res.points.push_back({r, n, rep.log_marginal_h1 - rep.log_marginal_h0});
        }
    }
    for (std::size_t n : spec.n_schedule) {
        std::vector<double> xs;
        std::size_t positive = 0;
        for (const auto& p : res.points) {
            if (p.n != n) continue;
            xs.push_back(p.log_bf);
            if (p.log_bf > 0.0) ++positive;
        }
        TrajectorySummary s;
        s.n = n;
        s.q05 = detail::quantile(xs, 0.05);
        s.q25 = detail::quantile(xs, 0.25);
        s.median = detail::quantile(xs, 0.50);
        s.q75 = detail::quantile(xs, 0.75);
        s.q95 = detail::quantile(xs, 0.95);
        s.fraction_positive = static_cast<double>(positive) / static_cast<double>(xs.size());
        res.summaries.push_back(s);
    }
    return res;
}

struct CEstimate {
    double c = 1.0;       // exponentiated point estimate
    double log_c = 0.0;   // mean log BF at the largest n
    double se = 0.0;      // jackknife standard error of log_c
};

// Estimate of the finite overlap-regime limit: mean log BF at the largest
// schedule size with a leave-one-out jackknife standard error.
inline CEstimate estimate_c(const TrajectoryResult& result) {
    if (result.regime != RegimeLabel::Overlap)
        throw WrongRegime("c(theta*) is defined only in the Overlap regime");
    std::size_t n_max = 0;
    for (const auto& s : result.summaries) n_max = std::max(n_max, s.n);
    std::vector<double> xs;
    for (const auto& p : result.points)
        if (p.n == n_max) xs.push_back(p.log_bf);
    if (result.summaries.size() < 2 || xs.size() < 10)
        throw WrongRegime("c estimation needs >= 2 schedule points and >= 10 replications");

    const double k = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= k;
    double ss = 0.0;
    for (double x : xs) {
        const double loo = (mean * k - x) / (k - 1.0); // leave-one-out mean
        ss += (loo - mean) * (loo - mean);
    }
    CEstimate e;
    e.log_c = mean;
    e.c = std::exp(mean);
    e.se = std::sqrt((k - 1.0) / k * ss);
    return e;
}

} // namespace bfset
