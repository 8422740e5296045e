#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <sys/wait.h>

#include "banova/bayes.hpp"
#include "banova/dataset.hpp"
#include "banova/render.hpp"
#include "banova/sampler.hpp"
#include "banova/summary.hpp"
#include "test_support.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string out_path = "cli_out_" + std::to_string(counter) + ".txt";
    const std::string err_path = "cli_err_" + std::to_string(counter) + ".txt";
    ++counter;
    const std::string cmd =
        std::string(BANOVA_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("classic renders the rail table") {
    const auto r = run_cli("classic " + testutil::rail_csv_path());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("9310.50") != std::string::npos);
    CHECK(r.out.find("1862.10") != std::string::npos);
    CHECK(r.out.find("16.17") != std::string::npos);
    CHECK(r.out.find("115.18") != std::string::npos);
    CHECK(r.out.find("0.000000") != std::string::npos);
}

TEST_CASE("classic JSON carries the same numbers as the library") {
    const auto r = run_cli("classic --format json " + testutil::rail_csv_path());
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto table = banova::fixed_effects_table(banova::load_csv_file(testutil::rail_csv_path()));
    CHECK(j["rows"][0]["sum_sq"].get<double>() == table.rows[0].sum_sq);
    CHECK(j["rows"][0]["df"].get<int>() == 5);
    CHECK(j["rows"][1]["df"].get<int>() == 12);
    CHECK(j["rows"][0]["f_value"].get<double>() == *table.rows[0].f_value);
    // the text rendering rounds those exact values to two decimals
    const auto text = run_cli("classic " + testutil::rail_csv_path());
    CHECK(text.out.find(banova::fmt_fixed(table.rows[0].sum_sq, 2)) != std::string::npos);
    CHECK(text.out.find(banova::fmt_fixed(*table.rows[0].f_value, 2)) != std::string::npos);
}

TEST_CASE("classic rejects unbalanced input with exit 2") {
    write_text("unbalanced.csv", "group,value\na,1\na,2\nb,3\n");
    const auto r = run_cli("classic unbalanced.csv");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("UnbalancedDesign") != std::string::npos);
    std::remove("unbalanced.csv");
}

TEST_CASE("banova on constant data exits 3") {
    write_text("constant.csv", "group,value\na,5\na,5\nb,5\nb,5\n");
    const auto r = run_cli("banova constant.csv --draws 2000");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("DegeneratePosterior") != std::string::npos);
    std::remove("constant.csv");
}

TEST_CASE("banova output is deterministic and matches the library") {
    const std::string args =
        "banova " + testutil::rail_csv_path() + " --draws 20000 --seed 3";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("Pr(sigma2_alpha = 0 | Y)") != std::string::npos);

    const auto rail = banova::load_csv_file(testutil::rail_csv_path());
    const auto post = banova::posterior_update(banova::default_hyperparameters(rail), rail);
    const auto draws = banova::sample(post, 20000, 3);
    const auto table = banova::banova_table(draws, 0.95);
    CHECK(a.out.find(banova::fmt_fixed(table.rows[0].mean, 2)) != std::string::npos);

    const auto j = nlohmann::json::parse(run_cli(args + " --format json").out);
    CHECK(j["rows"][0]["mean"].get<double>() == table.rows[0].mean);
    CHECK(j["rows"][2]["median"].get<double>() == table.rows[2].median);
    CHECK(j.contains("intervals"));
}

TEST_CASE("banova honors hyperparameter overrides") {
    write_text("hyper.json", "{\"u_eps\": 2.0, \"v_eps\": 4.0}");
    const std::string args = "banova " + testutil::rail_csv_path() +
                             " --draws 5000 --seed 1 --hyper hyper.json --format json";
    const auto r = run_cli(args);
    REQUIRE(r.exit_code == 0);
    const auto rail = banova::load_csv_file(testutil::rail_csv_path());
    auto h = banova::default_hyperparameters(rail);
    h.u_eps = 2.0;
    h.v_eps = 4.0;
    const auto draws = banova::sample(banova::posterior_update(h, rail), 5000, 1);
    const auto table = banova::banova_table(draws, 0.95);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["rows"][2]["mean"].get<double>() == table.rows[2].mean);
    std::remove("hyper.json");

    write_text("hyper_bad.json", "{\"tau_eps\": 1.0}");
    const auto bad = run_cli("banova " + testutil::rail_csv_path() + " --hyper hyper_bad.json");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("NonConjugateConfig") != std::string::npos);
    std::remove("hyper_bad.json");
}

TEST_CASE("banova rejects too few draws") {
    const auto r = run_cli("banova " + testutil::rail_csv_path() + " --draws 500");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("TooFewDraws") != std::string::npos);
}

TEST_CASE("banova exports draws") {
    const auto r = run_cli("banova " + testutil::rail_csv_path() +
                           " --draws 1200 --seed 5 --export-draws draws.csv");
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp("draws.csv");
    CHECK(text.find("draw,sigma2_eps,sigma2_alpha,at_zero,alpha_1") == 0);
    std::size_t lines = 0;
    for (const char c : text)
        lines += c == '\n' ? 1 : 0;
    CHECK(lines == 1201);
    std::remove("draws.csv");
}

TEST_CASE("paired probability recomputed from the exported draw CSV matches exactly") {
    const auto r = run_cli("banova " + testutil::rail_csv_path() +
                           " --draws 2000 --seed 8 --format json --export-draws draws2.csv");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);

    std::ifstream in("draws2.csv");
    std::string line;
    std::getline(in, line); // header
    std::size_t finite_gt = 0;
    std::size_t super_gt = 0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        // columns: draw, sigma2_eps, sigma2_alpha, at_zero, alpha_1..alpha_6, s_alpha
        std::vector<double> fields;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ','))
            fields.push_back(std::stod(tok));
        REQUIRE(fields.size() == 11);
        const double sigma_eps = std::sqrt(fields[1]);
        const double sigma_alpha = std::sqrt(fields[2]);
        const double s_alpha = fields[10];
        finite_gt += s_alpha > sigma_eps ? 1u : 0u;
        super_gt += sigma_alpha > sigma_eps ? 1u : 0u;
        ++rows;
    }
    REQUIRE(rows == 2000);
    CHECK(j["rows"][0]["pr_gt_error"].get<double>() == static_cast<double>(finite_gt) / 2000.0);
    CHECK(j["rows"][1]["pr_gt_error"].get<double>() == static_cast<double>(super_gt) / 2000.0);
    std::remove("draws2.csv");
}

TEST_CASE("interval records serialize with the full field set") {
    const auto r = run_cli("banova " + testutil::rail_csv_path() +
                           " --draws 2000 --seed 2 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["intervals"].size() == 3);
    for (const char* key : {"label", "kind", "lo50", "hi50", "lo95", "hi95", "median", "zero_dot"})
        CHECK(j["intervals"][0].contains(key));
    CHECK(j["intervals"][2]["kind"] == "error_sd");
}

TEST_CASE("region grids serialize to JSON") {
    const auto r = run_cli("region " + testutil::rail_csv_path() +
                           " --draws 20000 --grid 16x16 --format json --out t_json");
    REQUIRE(r.exit_code == 0);
    const auto like = nlohmann::json::parse(slurp("t_json_likelihood.json"));
    CHECK(like["kind"] == "relative_likelihood");
    CHECK(like["sigma_alpha_axis"].size() == 16);
    CHECK(like["values"].size() == 16);
    CHECK(like["values"][0].size() == 16);
    REQUIRE(like["levels"].size() == 3);
    CHECK(like["levels"][0]["threshold"].get<double>() ==
          doctest::Approx(-0.6931471805599453).epsilon(1e-8));
    const auto hpd = nlohmann::json::parse(slurp("t_json_hpd.json"));
    CHECK(hpd["kind"] == "hpd_density");
    std::remove("t_json_likelihood.json");
    std::remove("t_json_hpd.json");
}

TEST_CASE("region writes both grids with threshold metadata") {
    const auto r = run_cli("region " + testutil::rail_csv_path() +
                           " --draws 20000 --grid 24x24 --out t_region");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("wrote t_region_likelihood.csv") != std::string::npos);
    CHECK(r.out.find("wrote t_region_hpd.csv") != std::string::npos);
    const std::string like = slurp("t_region_likelihood.csv");
    CHECK(like.find("# kind: relative_likelihood") == 0);
    CHECK(like.find("# level: 0.5 threshold: -0.693147") != std::string::npos);
    CHECK(like.find("sigma_alpha,sigma_eps,value") != std::string::npos);
    const std::string hpd = slurp("t_region_hpd.csv");
    CHECK(hpd.find("# kind: hpd_density") == 0);

    const auto single = run_cli("region " + testutil::rail_csv_path() +
                                " --draws 20000 --grid 16x16 --levels 0.9 --out t_single");
    REQUIRE(single.exit_code == 0);
    const std::string singles = slurp("t_single_likelihood.csv");
    CHECK(singles.find("# level: 0.9") != std::string::npos);
    CHECK(singles.find("# level: 0.5") == std::string::npos);
    for (const char* f : {"t_region_likelihood.csv", "t_region_hpd.csv",
                          "t_single_likelihood.csv", "t_single_hpd.csv"})
        std::remove(f);
}

TEST_CASE("simulate requires a spec or preset and writes study files") {
    const auto missing = run_cli("simulate");
    CHECK(missing.exit_code == 2);

    const auto r = run_cli("simulate --preset paper --reps 1 --draws 1500 --out t_study");
    REQUIRE(r.exit_code == 0);
    const std::string csv = slurp("t_study_replicates.csv");
    std::size_t lines = 0;
    for (const char c : csv)
        lines += c == '\n' ? 1 : 0;
    CHECK(lines == 3); // header + one record per case
    const auto agg = nlohmann::json::parse(slurp("t_study_aggregate.json"));
    CHECK(agg["cases"].size() == 2);
    std::remove("t_study_replicates.csv");
    std::remove("t_study_aggregate.json");
}

TEST_CASE("unknown preset exits 2") {
    const auto r = run_cli("simulate --preset bogus --reps 1 --draws 1500");
    CHECK(r.exit_code == 2);
}
