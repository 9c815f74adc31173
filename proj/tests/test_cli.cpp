#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#ifndef BFSET_CLI_PATH
#error "BFSET_CLI_PATH must point at the built binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

RunResult run(const std::string& args) {
    const std::string cmd =
        std::string(BFSET_CLI_PATH) + " " + args + " > cli_out.txt 2> cli_err.txt";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp("cli_out.txt");
    r.err = slurp("cli_err.txt");
    return r;
}

const std::string kExampleConfig = R"({
  "model": {"model": "binomial", "n_trials": 20},
  "prior": {"p_h0": 0.5,
            "within_h0": {"family": "beta", "alpha": 1, "beta": 1},
            "within_h1": {"family": "beta", "alpha": 15, "beta": 7}},
  "data": {"inline": [14], "label": "s14"}
})";

} // namespace

TEST_CASE("compute: the worked example from a config file") {
    write_file("cfg_example.json", kExampleConfig);
    auto r = run("compute --config cfg_example.json --json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["bf"].get<double>() == Catch::Approx(2.89).margin(0.005));
    CHECK(j["p_h0_post"].get<double>() == Catch::Approx(0.257).margin(0.001));
    CHECK(j["p_h1_post"].get<double>() == Catch::Approx(0.743).margin(0.001));
}

TEST_CASE("compute: empty data is uninformative") {
    write_file("cfg_empty.json", R"({
      "model": {"model": "binomial", "n_trials": 20},
      "prior": {"p_h0": 0.5,
                "within_h0": {"family": "beta", "alpha": 1, "beta": 1},
                "within_h1": {"family": "beta", "alpha": 15, "beta": 7}}
    })");
    auto r = run("compute --config cfg_empty.json --json");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out)["bf"].get<double>() == 1.0);
}

TEST_CASE("compute: mismatched model and data exits 2 with a diagnostic") {
    write_file("cfg_bad.json", R"({
      "model": {"model": "bernoulli"},
      "prior": {"p_h0": 0.5,
                "within_h0": {"family": "beta", "alpha": 1, "beta": 1},
                "within_h1": {"family": "beta", "alpha": 2, "beta": 2}},
      "data": {"inline": [14]}
    })");
    auto r = run("compute --config cfg_bad.json");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("Bernoulli observation") != std::string::npos);
}

TEST_CASE("compute: missing config file exits 2") {
    auto r = run("compute --config does_not_exist.json");
    CHECK(r.exit_code == 2);
}

TEST_CASE("update: sequential batches match a single merged compute") {
    const std::string base = R"({
      "model": {"model": "binomial", "n_trials": 10},
      "prior": {"p_h0": 0.5,
                "within_h0": {"family": "beta", "alpha": 1, "beta": 1},
                "within_h1": {"family": "beta", "alpha": 15, "beta": 7}},
      "data": {"inline": [7]}
    })";
    write_file("cfg_seq.json", base);
    REQUIRE(run("update --config cfg_seq.json --state-out st_x.json --json").exit_code == 0);
    auto ry = run("update --config cfg_seq.json --state-in st_x.json --state-out st_xy.json "
                  "--json");
    REQUIRE(ry.exit_code == 0);

    write_file("cfg_merged.json", R"({
      "model": {"model": "binomial", "n_trials": 10},
      "prior": {"p_h0": 0.5,
                "within_h0": {"family": "beta", "alpha": 1, "beta": 1},
                "within_h1": {"family": "beta", "alpha": 15, "beta": 7}},
      "data": {"inline": [7, 7]}
    })");
    auto rm = run("compute --config cfg_merged.json --json");
    REQUIRE(rm.exit_code == 0);

    json final_state = json::parse(slurp("st_xy.json"));
    json merged = json::parse(rm.out);
    CHECK(final_state["p_h0"].get<double>() ==
          Catch::Approx(merged["p_h0_post"].get<double>()).epsilon(1e-9));
    // the merged evidence is the worked example's 14 of 20
    CHECK(merged["bf"].get<double>() == Catch::Approx(2.89).margin(0.005));
}

TEST_CASE("update: state files round-trip and reject stale versions") {
    write_file("cfg_rt.json", kExampleConfig);
    REQUIRE(run("update --config cfg_rt.json --state-out st_rt.json").exit_code == 0);

    // an empty follow-up batch changes nothing but the history
    write_file("cfg_rt_empty.json", R"({
      "model": {"model": "binomial", "n_trials": 20},
      "prior": {"p_h0": 0.5,
                "within_h0": {"family": "beta", "alpha": 1, "beta": 1},
                "within_h1": {"family": "beta", "alpha": 15, "beta": 7}}
    })");
    REQUIRE(run("update --config cfg_rt_empty.json --state-in st_rt.json "
                "--state-out st_rt2.json")
                .exit_code == 0);
    json a = json::parse(slurp("st_rt.json"));
    json b = json::parse(slurp("st_rt2.json"));
    json a_nohist = a, b_nohist = b;
    a_nohist.erase("history");
    b_nohist.erase("history");
    CHECK(a_nohist == b_nohist);

    a["format_version"] = 999;
    write_file("st_stale.json", a.dump());
    auto r = run("update --config cfg_rt_empty.json --state-in st_stale.json");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("format_version") != std::string::npos);
}

TEST_CASE("check-consistency: conjugate config passes; demo shows the drift") {
    write_file("cfg_cc.json", R"({
      "model": {"model": "binomial", "n_trials": 10},
      "prior": {"p_h0": 0.5,
                "within_h0": {"family": "beta", "alpha": 1, "beta": 1},
                "within_h1": {"family": "beta", "alpha": 15, "beta": 7}}
    })");
    write_file("batch_x.csv", "# first batch\n7\n");
    write_file("batch_y.csv", "7\n");
    auto r = run("check-consistency --config cfg_cc.json --batch-x batch_x.csv "
                 "--batch-y batch_y.csv --inconsistent-demo --json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["pass"].get<bool>());
    CHECK(j["inconsistent_demo"]["discrepancy"].get<double>() > 0.0);
    CHECK_FALSE(j["inconsistent_demo"]["is_consistent"].get<bool>());
}

TEST_CASE("limit-sim: disjoint alt-only spec writes increasing medians") {
    write_file("cfg_sim.json", R"({
      "model": {"model": "bernoulli"},
      "prior": {"overall": {"family": "beta", "alpha": 1, "beta": 1},
                "h0": [{"lo": 0.0, "hi": 0.5, "open": "hi"}],
                "h1": [[0.5, 1.0]]},
      "simulate": {"theta_star": 0.7, "n_schedule": [20, 80, 320],
                   "replications": 30, "seed": 7}
    })");
    auto r = run("limit-sim --config cfg_sim.json --long-csv sim_long.csv "
                 "--summary-csv sim_summary.csv --json");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out)["regime"].get<std::string>() == "alt-only");

    std::ifstream in("sim_summary.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,q05,q25,median,q75,q95,fraction_positive");
    double prev_median = -1e18;
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string field;
        double median = 0.0;
        for (int i = 0; i < 4 && std::getline(ss, field, ','); ++i) median = std::stod(field);
        CHECK(median > prev_median);
        prev_median = median;
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("limit-sim: deterministic given the seed, boundary theta refused") {
    write_file("cfg_sim2.json", R"({
      "model": {"model": "bernoulli"},
      "prior": {"overall": {"family": "beta", "alpha": 2, "beta": 2},
                "h0": [[0.0, 1.0]], "h1": [[0.0, 1.0]]},
      "simulate": {"theta_star": 0.7, "n_schedule": [20, 80],
                   "replications": 12, "seed": 5}
    })");
    auto r1 = run("limit-sim --config cfg_sim2.json --allow-overlap --long-csv s1.csv "
                  "--summary-csv s1s.csv --json");
    auto r2 = run("limit-sim --config cfg_sim2.json --allow-overlap --long-csv s2.csv "
                  "--summary-csv s2s.csv --json");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    CHECK(slurp("s1.csv") == slurp("s2.csv"));
    CHECK(json::parse(r1.out)["regime"].get<std::string>() == "overlap");
    CHECK(json::parse(r1.out).contains("c_estimate"));

    write_file("cfg_sim3.json", R"({
      "model": {"model": "bernoulli"},
      "prior": {"overall": {"family": "beta", "alpha": 1, "beta": 1},
                "h0": [{"lo": 0.0, "hi": 0.5, "open": "hi"}],
                "h1": [[0.5, 1.0]]},
      "simulate": {"theta_star": 0.5, "n_schedule": [20], "replications": 5, "seed": 1}
    })");
    auto r3 = run("limit-sim --config cfg_sim3.json --long-csv s3.csv --summary-csv s3s.csv");
    CHECK(r3.exit_code == 2);
    CHECK(r3.err.find("boundary") != std::string::npos);
}

TEST_CASE("limit-sim: overlapping hypotheses without the opt-in exit 2") {
    write_file("cfg_sim4.json", R"({
      "model": {"model": "bernoulli"},
      "prior": {"overall": {"family": "beta", "alpha": 2, "beta": 2},
                "h0": [[0.0, 1.0]], "h1": [[0.0, 1.0]]},
      "simulate": {"theta_star": 0.7, "n_schedule": [20], "replications": 5, "seed": 1}
    })");
    auto r = run("limit-sim --config cfg_sim4.json --long-csv s4.csv --summary-csv s4s.csv");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("allow-overlap") != std::string::npos);
}

TEST_CASE("example: repeated runs are byte-identical and report the paradox") {
    auto r1 = run("example");
    auto r2 = run("example");
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(r1.out.find("2.89") != std::string::npos);
    CHECK(r1.out.find("Beta(15, 7)") != std::string::npos);

    auto rj = run("example --json");
    REQUIRE(rj.exit_code == 0);
    json j = json::parse(rj.out);
    CHECK(j["posterior_h0"]["alpha"].get<double>() == 15.0);
    CHECK(j["posterior_h0"]["beta"].get<double>() == 7.0);
    CHECK(j["posterior_h0_equals_prior_h1"].get<bool>());
    CHECK_FALSE(j["contrast_informable"].get<bool>());
}
