#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bfset/asymptotics.hpp"
#include "bfset/density.hpp"
#include "bfset/engine.hpp"
#include "bfset/errors.hpp"
#include "bfset/interval.hpp"
#include "bfset/sampling.hpp"

namespace bfset {

using nlohmann::json;

inline constexpr int kStateFormatVersion = 1;

// ---- hypothesis sets ----
// Accepted forms per interval: [lo, hi] or {"lo":., "hi":., "open":"lo"|"hi"|"both"}.

inline Interval interval_from_json(const json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw ConfigError("interval array must be [lo, hi]");
        return Interval(j[0].get<double>(), j[1].get<double>());
    }
    if (!j.is_object() || !j.contains("lo") || !j.contains("hi"))
        throw ConfigError("interval must be [lo, hi] or {lo, hi, open}");
    bool lo_closed = true, hi_closed = true;
    if (j.contains("open")) {
        const std::string o = j["open"].get<std::string>();
        if (o == "lo") lo_closed = false;
        else if (o == "hi") hi_closed = false;
        else if (o == "both") lo_closed = hi_closed = false;
        else throw ConfigError("interval open flag must be 'lo', 'hi' or 'both'");
    }
    return Interval(j["lo"].get<double>(), j["hi"].get<double>(), lo_closed, hi_closed);
}

inline json interval_to_json(const Interval& iv) {
    if (iv.lo_closed && iv.hi_closed) return json::array({iv.lo, iv.hi});
    json j{{"lo", iv.lo}, {"hi", iv.hi}};
    if (!iv.lo_closed && !iv.hi_closed) j["open"] = "both";
    else j["open"] = iv.lo_closed ? "hi" : "lo";
    return j;
}

inline HypothesisSet hypothesis_set_from_json(const json& j, const ParameterSpace& space,
                                              std::string label = "") {
    if (!j.is_array()) throw ConfigError("hypothesis set must be a list of intervals");
    std::vector<Interval> ivs;
    for (const auto& e : j) ivs.push_back(interval_from_json(e));
    HypothesisSet s = normalize(std::move(ivs), space, std::move(label));
    if (s.empty()) throw ConfigError("hypothesis set must be nonempty");
    return s;
}

inline json hypothesis_set_to_json(const HypothesisSet& s) {
    json j = json::array();
    for (const auto& iv : s.intervals()) j.push_back(interval_to_json(iv));
    return j;
}

// ---- sampling models ----

inline SamplingModel model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("model"))
        throw ConfigError("model block requires a 'model' field");
    const std::string kind = j["model"].get<std::string>();
    if (kind == "bernoulli") return SamplingModel::bernoulli();
    if (kind == "binomial") {
        if (!j.contains("n_trials")) throw ConfigError("binomial model requires 'n_trials'");
        return SamplingModel::binomial(j["n_trials"].get<int>());
    }
    if (kind == "normal") {
        if (!j.contains("sigma")) throw ConfigError("normal model requires 'sigma'");
        return SamplingModel::normal_known_sigma(j["sigma"].get<double>());
    }
    throw ConfigError("unknown model '" + kind + "'");
}

inline json model_to_json(const SamplingModel& m) {
    json j{{"model", m.name()}};
    if (m.kind == ModelKind::BinomialCount) j["n_trials"] = m.n_trials;
    if (m.kind == ModelKind::NormalKnownSigma) j["sigma"] = m.sigma;
    return j;
}

// ---- densities ----

inline ParameterSpace space_from_json(const json& j) {
    return ParameterSpace(j["lower"].get<double>(), j["upper"].get<double>(),
                          j.value("open_lower", false), j.value("open_upper", false));
}

inline json space_to_json(const ParameterSpace& s) {
    json j{{"lower", s.lower}, {"upper", s.upper}};
    if (s.open_lower) j["open_lower"] = true;
    if (s.open_upper) j["open_upper"] = true;
    return j;
}

inline Density density_from_json(const json& j, const ParameterSpace& space) {
    if (!j.is_object() || !j.contains("family"))
        throw ConfigError("density block requires a 'family' field");
    const std::string fam = j["family"].get<std::string>();
    Density d = [&]() -> Density {
        if (fam == "beta") return Density::beta(j.at("alpha").get<double>(),
                                                j.at("beta").get<double>());
        if (fam == "normal")
            return Density::normal(j.at("mean").get<double>(), j.at("sd").get<double>(), space);
        if (fam == "point") return Density::point_mass(j.at("at").get<double>(), space);
        if (fam == "grid") {
            HypothesisSet sup = hypothesis_set_from_json(j.at("support"), space);
            std::vector<double> nodes = j.at("nodes").get<std::vector<double>>();
            std::vector<double> lw = j.at("log_weights").get<std::vector<double>>();
            std::vector<std::size_t> ends = j.at("block_ends").get<std::vector<std::size_t>>();
            if (nodes.size() != lw.size() || ends.empty() || ends.back() != nodes.size())
                throw ConfigError("inconsistent grid arrays");
            return Density::from_grid_data(sup, space, std::move(nodes), std::move(lw),
                                           std::move(ends));
        }
        throw ConfigError("unknown density family '" + fam + "'");
    }();
    if (j.contains("truncate_to")) {
        HypothesisSet sub = hypothesis_set_from_json(j["truncate_to"], space);
        d = restrict_density(d, sub).density;
    }
    return d;
}

inline json density_to_json(const Density& d) {
    json j;
    switch (d.family()) {
        case Family::Beta:
            j["family"] = "beta";
            j["alpha"] = d.alpha();
            j["beta"] = d.beta_param();
            if (d.truncated()) j["truncate_to"] = hypothesis_set_to_json(d.support());
            break;
        case Family::Normal:
            j["family"] = "normal";
            j["mean"] = d.mean();
            j["sd"] = d.sd();
            // a normal always carries its finite support
            if (d.support() != HypothesisSet({Interval(d.space().lower, d.space().upper)}))
                j["truncate_to"] = hypothesis_set_to_json(d.support());
            break;
        case Family::PointMass:
            j["family"] = "point";
            j["at"] = d.location();
            break;
        case Family::Grid:
            j["family"] = "grid";
            j["support"] = hypothesis_set_to_json(d.support());
            j["nodes"] = d.grid_nodes();
            j["log_weights"] = d.grid_log_weights();
            j["block_ends"] = d.grid_block_ends();
            break;
    }
    return j;
}

// ---- analysis state ----

inline json state_to_json(const AnalysisState& s) {
    return json{{"format_version", kStateFormatVersion},
                {"model", model_to_json(s.model)},
                {"space", space_to_json(s.mix.within_h0.space())},
                {"h0", hypothesis_set_to_json(s.mix.h0)},
                {"h1", hypothesis_set_to_json(s.mix.h1)},
                {"p_h0", s.mix.p_h0},
                {"p_h1", s.mix.p_h1},
                {"within_h0", density_to_json(s.mix.within_h0)},
                {"within_h1", density_to_json(s.mix.within_h1)},
                {"history", s.history}};
}

inline AnalysisState state_from_json(const json& j) {
    if (!j.contains("format_version") || !j["format_version"].is_number_integer())
        throw ConfigError("state file lacks a format_version field");
    const int v = j["format_version"].get<int>();
    if (v != kStateFormatVersion)
        throw ConfigError("unsupported state format_version " + std::to_string(v) +
                          " (expected " + std::to_string(kStateFormatVersion) + ")");
    const SamplingModel model = model_from_json(j.at("model"));
    const ParameterSpace space =
        j.contains("space") ? space_from_json(j["space"]) : model.default_space();
    HypothesisSet h0 = hypothesis_set_from_json(j.at("h0"), space, "H0");
    HypothesisSet h1 = hypothesis_set_from_json(j.at("h1"), space, "H1");
    MixturePrior mix(j.at("p_h0").get<double>(), j.at("p_h1").get<double>(),
                     density_from_json(j.at("within_h0"), space),
                     density_from_json(j.at("within_h1"), space), std::move(h0), std::move(h1));
    return AnalysisState(std::move(mix), model,
                         j.value("history", std::vector<std::string>{}));
}

// ---- analysis configuration ----

struct OutputOptions {
    int precision = 6;
    bool jeffreys_label = false;
};

struct AnalysisConfig {
    SamplingModel model;
    ParameterSpace space;
    HypothesisSet h0;
    HypothesisSet h1;
    std::optional<Density> overall;      // overall-prior route
    std::optional<MixturePrior> mixture; // explicit-mixture route
    DataBatch data;
    OutputOptions output;
    json raw;
};

inline DataBatch read_csv_batch(const std::string& path, const SamplingModel& model,
                                const std::string& label = "") {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open data file '" + path + "'");
    std::vector<double> obs;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        double v;
        if (ss >> v) obs.push_back(v);
    }
    return make_batch(model, std::move(obs), label.empty() ? path : label);
}

// Build the mixture for an overall-prior specification. Disjoint sets go
// through decompose; overlapping sets are only meaningful for the limit
// simulation and require the explicit opt-in.
inline MixturePrior mixture_from_overall(const Density& pi, const HypothesisSet& h0,
                                         const HypothesisSet& h1, bool allow_overlap) {
    if (set_intersection(h0, h1).measure() > 0.0) {
        if (!allow_overlap)
            throw ConfigError("hypothesis sets overlap; pass --allow-overlap if intended");
        const double m0 = pi.mass_on(h0);
        const double m1 = pi.mass_on(h1);
        if (!(m0 > kMassFloor) || !(m1 > kMassFloor))
            throw ZeroMassRestriction("a hypothesis carries no prior mass");
        return MixturePrior(m0 / (m0 + m1), m1 / (m0 + m1), restrict_density(pi, h0).density,
                            restrict_density(pi, h1).density, h0, h1);
    }
    return decompose(pi, h0, h1);
}

inline AnalysisConfig parse_config(const json& j) {
    AnalysisConfig cfg{SamplingModel::bernoulli(), ParameterSpace::unit(), {}, {}, {}, {},
                       DataBatch{}, OutputOptions{}, j};
    if (!j.contains("model")) throw ConfigError("config requires a 'model' block");
    cfg.model = model_from_json(j["model"]);
    cfg.space = j.contains("space") ? space_from_json(j["space"]) : cfg.model.default_space();
    if (cfg.model.kind != ModelKind::NormalKnownSigma &&
        (cfg.space.lower < 0.0 || cfg.space.upper > 1.0))
        throw ConfigError("count models require a parameter space within [0, 1]");

    if (!j.contains("prior")) throw ConfigError("config requires a 'prior' block");
    const json& pr = j["prior"];
    const bool overall_route = pr.contains("overall");
    const bool mixture_route = pr.contains("p_h0");
    if (overall_route == mixture_route)
        throw ConfigError("prior block must use exactly one of the 'overall' or 'p_h0' forms");

    if (overall_route) {
        if (!pr.contains("h0") || !pr.contains("h1"))
            throw ConfigError("overall-prior route requires 'h0' and 'h1' hypothesis sets");
        cfg.overall = density_from_json(pr["overall"], cfg.space);
        cfg.h0 = hypothesis_set_from_json(pr["h0"], cfg.space, "H0");
        cfg.h1 = hypothesis_set_from_json(pr["h1"], cfg.space, "H1");
    } else {
        const double p0 = pr.at("p_h0").get<double>();
        Density w0 = density_from_json(pr.at("within_h0"), cfg.space);
        Density w1 = density_from_json(pr.at("within_h1"), cfg.space);
        cfg.h0 = pr.contains("h0") ? hypothesis_set_from_json(pr["h0"], cfg.space, "H0")
                                   : w0.support();
        cfg.h1 = pr.contains("h1") ? hypothesis_set_from_json(pr["h1"], cfg.space, "H1")
                                   : w1.support();
        cfg.mixture = MixturePrior(p0, 1.0 - p0, std::move(w0), std::move(w1), cfg.h0, cfg.h1);
    }

    if (j.contains("data")) {
        const json& dj = j["data"];
        if (dj.contains("inline"))
            cfg.data = make_batch(cfg.model, dj["inline"].get<std::vector<double>>(),
                                  dj.value("label", "inline"));
        else if (dj.contains("csv"))
            cfg.data = read_csv_batch(dj["csv"].get<std::string>(), cfg.model,
                                      dj.value("label", ""));
        else
            throw ConfigError("data block must contain 'inline' or 'csv'");
    } else {
        cfg.data = DataBatch{cfg.model, {}, "empty"};
    }

    if (j.contains("output")) {
        cfg.output.precision = j["output"].value("precision", 6);
        cfg.output.jeffreys_label = j["output"].value("jeffreys_label", false);
    }
    return cfg;
}

inline AnalysisConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

// Resolve the config into the mixture the engine runs on.
inline MixturePrior config_mixture(const AnalysisConfig& cfg, bool allow_overlap = false) {
    if (cfg.mixture) return *cfg.mixture;
    return mixture_from_overall(*cfg.overall, cfg.h0, cfg.h1, allow_overlap);
}

inline json report_to_json(const EvidenceReport& r) {
    return json{{"bf", r.bf},
                {"prior_odds", r.prior_odds},
                {"posterior_odds", r.posterior_odds},
                {"p_h0_post", r.p_h0_post},
                {"p_h1_post", r.p_h1_post},
                {"log_marginal_h0", r.log_marginal_h0},
                {"log_marginal_h1", r.log_marginal_h1},
                {"decisive", r.decisive}};
}

} // namespace bfset
