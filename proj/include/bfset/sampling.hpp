#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bfset/errors.hpp"
#include "bfset/interval.hpp"

namespace bfset {

// splitmix64: the pinned counter-based generator. Determinism given a seed
// is a cross-platform contract, so no std:: distribution machinery is used.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // documented mixing function for derived replication seeds
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        SplitMix64 g(seed ^ (a * 0xd1342543de82ef95ULL) ^ (b * 0xaf251af3b0f025b5ULL));
        return g.next_u64();
    }
};

enum class ModelKind { Bernoulli, BinomialCount, NormalKnownSigma };

struct SamplingModel {
    ModelKind kind = ModelKind::Bernoulli;
    int n_trials = 1;      // BinomialCount only
    double sigma = 1.0;    // NormalKnownSigma only

    static SamplingModel bernoulli() { return {ModelKind::Bernoulli, 1, 1.0}; }
    static SamplingModel binomial(int n_trials) {
        if (n_trials <= 0) throw ConfigError("binomial model requires n_trials > 0");
        return {ModelKind::BinomialCount, n_trials, 1.0};
    }
    static SamplingModel normal_known_sigma(double sigma) {
        if (!(sigma > 0.0)) throw ConfigError("normal model requires sigma > 0");
        return {ModelKind::NormalKnownSigma, 1, sigma};
    }

    bool operator==(const SamplingModel& o) const {
        if (kind != o.kind) return false;
        if (kind == ModelKind::BinomialCount) return n_trials == o.n_trials;
        if (kind == ModelKind::NormalKnownSigma) return sigma == o.sigma;
        return true;
    }

    ParameterSpace default_space() const {
        if (kind == ModelKind::NormalKnownSigma) return ParameterSpace(-1e6, 1e6);
        return ParameterSpace::unit();
    }

    std::string name() const {
        switch (kind) {
            case ModelKind::Bernoulli: return "bernoulli";
            case ModelKind::BinomialCount: return "binomial";
            case ModelKind::NormalKnownSigma: return "normal";
        }
        return "?";
    }
};

struct DataBatch {
    SamplingModel model;
    std::vector<double> observations;
    std::string label;

    bool empty() const { return observations.empty(); }
    std::size_t size() const { return observations.size(); }
};

inline double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline void validate_observation(const SamplingModel& m, double x) {
    switch (m.kind) {
        case ModelKind::Bernoulli:
            if (x != 0.0 && x != 1.0)
                throw InvalidObservation("Bernoulli observation must be 0 or 1");
            break;
        case ModelKind::BinomialCount:
            if (x < 0.0 || x > m.n_trials || x != std::floor(x))
                throw InvalidObservation("binomial count out of range");
            break;
        case ModelKind::NormalKnownSigma:
            if (!std::isfinite(x)) throw InvalidObservation("non-finite observation");
            break;
    }
}

inline DataBatch make_batch(const SamplingModel& m, std::vector<double> obs,
                            std::string label = "") {
    for (double x : obs) validate_observation(m, x);
    return DataBatch{m, std::move(obs), std::move(label)};
}

// log f(x|theta) = sum_i log f(x_i|theta); the empty batch has likelihood 1.
inline double log_likelihood(const SamplingModel& m, const DataBatch& data, double theta) {
    if (data.model != m) throw ModelMismatch("batch model differs from requested model");
    double ll = 0.0;
    switch (m.kind) {
        case ModelKind::Bernoulli:
            for (double x : data.observations) {
                validate_observation(m, x);
                ll += x == 1.0 ? std::log(theta) : std::log1p(-theta);
            }
            break;
        case ModelKind::BinomialCount:
            for (double x : data.observations) {
                validate_observation(m, x);
                const int s = static_cast<int>(x);
                ll += log_choose(m.n_trials, s);
                if (s > 0) ll += s * std::log(theta);
                if (s < m.n_trials) ll += (m.n_trials - s) * std::log1p(-theta);
            }
            break;
        case ModelKind::NormalKnownSigma:
            for (double x : data.observations) {
                validate_observation(m, x);
                const double z = (x - theta) / m.sigma;
                ll += -0.5 * z * z - std::log(m.sigma) - 0.918938533204672742;
            }
            break;
    }
    return ll;
}

// Successes/failures sufficient statistic for the Bernoulli/binomial models.
struct CountStat {
    long successes = 0;
    long failures = 0;
    double log_comb = 0.0; // sum of per-observation binomial coefficients
};

inline CountStat count_stat(const SamplingModel& m, const DataBatch& data) {
    CountStat st;
    for (double x : data.observations) {
        const int s = static_cast<int>(x);
        if (m.kind == ModelKind::Bernoulli) {
            st.successes += s;
            st.failures += 1 - s;
        } else {
            st.successes += s;
            st.failures += m.n_trials - s;
            st.log_comb += log_choose(m.n_trials, s);
        }
    }
    return st;
}

inline DataBatch merge(const DataBatch& a, const DataBatch& b) {
    if (a.model != b.model) throw ModelMismatch("cannot merge batches from different models");
    DataBatch out = a;
    out.observations.insert(out.observations.end(), b.observations.begin(),
                            b.observations.end());
    out.label = a.label.empty() ? b.label : (b.label.empty() ? a.label : a.label + "+" + b.label);
    return out;
}

inline DataBatch simulate(const SamplingModel& m, double theta_star, std::size_t n,
                          std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> obs;
    obs.reserve(n);
    switch (m.kind) {
        case ModelKind::Bernoulli:
            for (std::size_t i = 0; i < n; ++i)
                obs.push_back(rng.next_double() < theta_star ? 1.0 : 0.0);
            break;
        case ModelKind::BinomialCount:
            for (std::size_t i = 0; i < n; ++i) {
                int count = 0;
                for (int t = 0; t < m.n_trials; ++t)
                    if (rng.next_double() < theta_star) ++count;
                obs.push_back(static_cast<double>(count));
            }
            break;
        case ModelKind::NormalKnownSigma:
            for (std::size_t i = 0; i < n; ++i) {
                // Box-Muller, one deviate per pair of uniforms
                const double u1 = 1.0 - rng.next_double();
                const double u2 = rng.next_double();
                const double z = std::sqrt(-2.0 * std::log(u1)) *
                                 std::cos(2.0 * 3.14159265358979323846 * u2);
                obs.push_back(theta_star + m.sigma * z);
            }
            break;
    }
    return DataBatch{m, std::move(obs), ""};
}

} // namespace bfset
