// bfset: set-valued Bayesian hypothesis comparison with Bayes factors.
//
// Subcommands: compute, update, check-consistency, limit-sim, example.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 consistency-check failure.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bfset/asymptotics.hpp"
#include "bfset/engine.hpp"
#include "bfset/serialize.hpp"

using namespace bfset;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInconsistent = 4;

// display-only verbal strength label; never feeds back into the analysis
const char* jeffreys_label(double bf) {
    const double b = bf >= 1.0 ? bf : 1.0 / bf;
    const char* strength = b < 3.16 ? "barely worth mentioning"
                           : b < 10.0 ? "substantial"
                           : b < 31.6 ? "strong"
                           : b < 100.0 ? "very strong"
                                       : "decisive";
    static std::string out;
    out = std::string(strength) + (bf >= 1.0 ? " (favoring H1)" : " (favoring H0)");
    return out.c_str();
}

void print_report(const EvidenceReport& r, const OutputOptions& opt, bool as_json) {
    if (as_json) {
        std::cout << report_to_json(r).dump(2) << "\n";
        return;
    }
    std::cout << std::setprecision(opt.precision);
    std::cout << "BF (H1/H0):        " << r.bf << "\n"
              << "prior odds:        " << r.prior_odds << "\n"
              << "posterior odds:    " << r.posterior_odds << "\n"
              << "p(H0 | data):      " << r.p_h0_post << "\n"
              << "p(H1 | data):      " << r.p_h1_post << "\n"
              << "log marginal H0:   " << r.log_marginal_h0 << "\n"
              << "log marginal H1:   " << r.log_marginal_h1 << "\n";
    if (r.decisive) std::cout << "evidence:          decisive (a hypothesis was annihilated)\n";
    if (opt.jeffreys_label) std::cout << "strength:          " << jeffreys_label(r.bf) << "\n";
}

AnalysisState state_from_config(const AnalysisConfig& cfg, bool allow_overlap) {
    return AnalysisState(config_mixture(cfg, allow_overlap), cfg.model);
}

AnalysisState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open state file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("state parse error in '" + path + "': " + e.what());
    }
    return state_from_json(j);
}

void save_state(const AnalysisState& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write state file '" + path + "'");
    out << state_to_json(s).dump(2) << "\n";
}

int cmd_compute(const std::string& config_path, bool as_json, bool allow_overlap) {
    AnalysisConfig cfg = load_config(config_path);
    AnalysisState state = state_from_config(cfg, allow_overlap);
    EvidenceReport rep = bayes_factor(state, cfg.data);
    print_report(rep, cfg.output, as_json);
    return 0;
}

int cmd_update(const std::string& config_path, const std::string& state_in,
               const std::string& state_out, bool as_json, bool allow_overlap) {
    AnalysisConfig cfg = load_config(config_path);
    AnalysisState state =
        state_in.empty() ? state_from_config(cfg, allow_overlap) : load_state(state_in);
    if (state.model != cfg.model)
        throw ConfigError("state file model does not match the config model");
    auto [next, rep] = update_state(state, cfg.data);
    if (!state_out.empty()) save_state(next, state_out);
    print_report(rep, cfg.output, as_json);
    return 0;
}

int cmd_check_consistency(const std::string& config_path, const std::string& x_path,
                          const std::string& y_path, bool as_json, bool allow_overlap,
                          bool inconsistent_demo) {
    AnalysisConfig cfg = load_config(config_path);
    AnalysisState initial = state_from_config(cfg, allow_overlap);
    DataBatch x = read_csv_batch(x_path, cfg.model, "x");
    DataBatch y = read_csv_batch(y_path, cfg.model, "y");
    ConsistencyReport r = check_consistency(initial, x, y);

    std::optional<InconsistencyDiagnostics> demo;
    if (inconsistent_demo && !x.empty()) demo = inconsistent_path(initial, x, y);

    if (as_json) {
        json j{{"max_prob_diff", r.max_prob_diff},
               {"sup_density_diff", r.sup_density_diff},
               {"tolerance_prob", r.tolerance_prob},
               {"tolerance_density", r.tolerance_density},
               {"pass", r.pass}};
        if (demo) {
            j["inconsistent_demo"] = {
                {"consistent_posterior_odds", demo->consistent_posterior_odds},
                {"inconsistent_posterior_odds", demo->inconsistent_posterior_odds},
                {"discrepancy", demo->discrepancy},
                {"is_consistent", demo->is_consistent}};
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << std::setprecision(cfg.output.precision);
        std::cout << "sequential vs merged updating\n"
                  << "max |p(H) difference|:      " << r.max_prob_diff << " (tolerance "
                  << r.tolerance_prob << ")\n"
                  << "sup density difference:     " << r.sup_density_diff << " (tolerance "
                  << r.tolerance_density << ")\n"
                  << "result:                     " << (r.pass ? "PASS" : "FAIL") << "\n";
        if (demo) {
            std::cout << "inconsistent-path demo (second batch scored with the initial priors)\n"
                      << "  consistent posterior odds:   " << demo->consistent_posterior_odds
                      << "\n"
                      << "  inconsistent posterior odds: " << demo->inconsistent_posterior_odds
                      << "\n"
                      << "  discrepancy:                 " << demo->discrepancy << "\n";
        }
    }
    return r.pass ? 0 : kExitInconsistent;
}

int cmd_limit_sim(const std::string& config_path, std::optional<std::uint64_t> seed_override,
                  const std::string& long_csv, const std::string& summary_csv, bool as_json,
                  bool allow_overlap) {
    AnalysisConfig cfg = load_config(config_path);
    if (!cfg.raw.contains("simulate"))
        throw ConfigError("limit-sim requires a 'simulate' block in the config");
    const json& sj = cfg.raw["simulate"];
    if (!sj.contains("theta_star") || !sj.contains("n_schedule"))
        throw ConfigError("simulate block requires 'theta_star' and 'n_schedule'");

    TrajectorySpec spec(sj["theta_star"].get<double>(), config_mixture(cfg, allow_overlap),
                        cfg.model, sj["n_schedule"].get<std::vector<std::size_t>>(),
                        sj.value("replications", std::size_t{50}),
                        seed_override.value_or(sj.value("seed", std::uint64_t{1})));

    TrajectoryResult res;
    try {
        res = run_trajectories(spec);
    } catch (const OutOfSpace& e) {
        // boundary theta_star is excluded from the asymptotic analysis
        throw ConfigError(e.what());
    }

    {
        std::ofstream out(long_csv);
        if (!out) throw ConfigError("cannot write '" + long_csv + "'");
        out << "replication,n,log_bf\n" << std::setprecision(17);
        for (const auto& p : res.points)
            out << p.replication << "," << p.n << "," << p.log_bf << "\n";
    }
    {
        std::ofstream out(summary_csv);
        if (!out) throw ConfigError("cannot write '" + summary_csv + "'");
        out << "n,q05,q25,median,q75,q95,fraction_positive\n" << std::setprecision(17);
        for (const auto& s : res.summaries)
            out << s.n << "," << s.q05 << "," << s.q25 << "," << s.median << "," << s.q75 << ","
                << s.q95 << "," << s.fraction_positive << "\n";
    }

    const char* regime = res.regime == RegimeLabel::NullOnly ? "null-only"
                         : res.regime == RegimeLabel::AltOnly ? "alt-only"
                                                              : "overlap";
    std::optional<CEstimate> c;
    if (res.regime == RegimeLabel::Overlap) {
        try {
            c = estimate_c(res);
        } catch (const WrongRegime&) {
            // schedule too thin for an estimate; regime label still reported
        }
    }

    if (as_json) {
        json j{{"regime", regime}, {"long_csv", long_csv}, {"summary_csv", summary_csv}};
        if (c) j["c_estimate"] = {{"c", c->c}, {"log_c", c->log_c}, {"se", c->se}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << std::setprecision(cfg.output.precision);
        std::cout << "regime:      " << regime << "\n"
                  << "long csv:    " << long_csv << "\n"
                  << "summary csv: " << summary_csv << "\n";
        if (c)
            std::cout << "c estimate:  " << c->c << " (log " << c->log_c << ", se " << c->se
                      << ")\n";
    }
    return 0;
}

int cmd_example(bool as_json) {
    ParadoxReport p = paradox_demo();
    if (as_json) {
        json j{{"report", report_to_json(p.report)},
               {"posterior_h0", {{"alpha", p.posterior_h0_alpha}, {"beta", p.posterior_h0_beta}}},
               {"posterior_h1", {{"alpha", p.posterior_h1_alpha}, {"beta", p.posterior_h1_beta}}},
               {"posterior_h0_equals_prior_h1", p.posterior_h0_equals_prior_h1},
               {"falsifiers_of_h0", hypothesis_set_to_json(p.falsifiers_of_h0)},
               {"falsifiers_of_h1", hypothesis_set_to_json(p.falsifiers_of_h1)},
               {"contrast_informable", p.contrast_informable}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << std::setprecision(6);
    std::cout << "worked example: uniform vs Beta(15,7) on [0,1], p = (0.5, 0.5), s = 14 of 20\n"
              << "BF (H1/H0):               " << p.report.bf << "\n"
              << "p(H0 | s):                " << p.report.p_h0_post << "\n"
              << "p(H1 | s):                " << p.report.p_h1_post << "\n"
              << "posterior within H0:      Beta(" << p.posterior_h0_alpha << ", "
              << p.posterior_h0_beta << ")\n"
              << "posterior within H1:      Beta(" << p.posterior_h1_alpha << ", "
              << p.posterior_h1_beta << ")\n"
              << "posterior H0 == prior H1: " << (p.posterior_h0_equals_prior_h1 ? "yes" : "no")
              << "\n"
              << "falsifiers of H0:         "
              << (p.falsifiers_of_h0.empty() ? "(empty)" : "nonempty") << "\n"
              << "falsifiers of H1:         "
              << (p.falsifiers_of_h1.empty() ? "(empty)" : "nonempty") << "\n";
    if (!p.contrast_informable)
        std::cout << "verdict: both falsifier classes are empty; no data can inform this "
                     "contrast\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Set-valued Bayesian hypothesis comparison with Bayes factors"};
    app.require_subcommand(1);

    std::string config_path, state_in, state_out;
    std::string x_path, y_path;
    std::string long_csv = "trajectory_long.csv", summary_csv = "trajectory_summary.csv";
    bool as_json = false, allow_overlap = false, inconsistent_demo = false;
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* opt = cmd->add_option("--config", config_path, "analysis config (JSON)");
        if (needs_config) opt->required();
        cmd->add_flag("--json", as_json, "machine-readable output");
    };

    auto* compute = app.add_subcommand("compute", "one-shot Bayes factor for a batch");
    add_common(compute, true);
    compute->add_flag("--allow-overlap", allow_overlap,
                      "permit overlapping hypothesis sets in the overall-prior route");

    auto* update = app.add_subcommand("update", "absorb a batch and persist the state");
    add_common(update, true);
    update->add_option("--state-in", state_in, "previously saved analysis state");
    update->add_option("--state-out", state_out, "path for the updated state");
    update->add_flag("--allow-overlap", allow_overlap,
                     "permit overlapping hypothesis sets in the overall-prior route");

    auto* check = app.add_subcommand("check-consistency",
                                     "sequential vs merged updating on two batches");
    add_common(check, true);
    check->add_option("--batch-x", x_path, "first data batch (CSV)")->required();
    check->add_option("--batch-y", y_path, "second data batch (CSV)")->required();
    check->add_flag("--allow-overlap", allow_overlap,
                    "permit overlapping hypothesis sets in the overall-prior route");
    check->add_flag("--inconsistent-demo", inconsistent_demo,
                    "also score the second batch with the never-updated priors");

    auto* limit = app.add_subcommand("limit-sim", "Monte Carlo Bayes-factor trajectories");
    add_common(limit, true);
    limit->add_option("--seed", seed, "override the config seed");
    limit->add_option("--long-csv", long_csv, "long-format output path");
    limit->add_option("--summary-csv", summary_csv, "per-n summary output path");
    limit->add_flag("--allow-overlap", allow_overlap,
                    "permit overlapping hypothesis sets in the overall-prior route");

    auto* example = app.add_subcommand("example", "the worked beta-binomial paradox");
    example->add_flag("--json", as_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return cmd_compute(config_path, as_json, allow_overlap);
        if (update->parsed())
            return cmd_update(config_path, state_in, state_out, as_json, allow_overlap);
        if (check->parsed())
            return cmd_check_consistency(config_path, x_path, y_path, as_json, allow_overlap,
                                         inconsistent_demo);
        if (limit->parsed())
            return cmd_limit_sim(config_path, seed, long_csv, summary_csv, as_json,
                                 allow_overlap);
        if (example->parsed()) return cmd_example(as_json);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidObservation& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ModelMismatch& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IntervalOutOfSpace& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const OutOfSpace& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
