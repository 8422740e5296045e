#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "banova/bayes.hpp"
#include "banova/classical.hpp"
#include "banova/dataset.hpp"
#include "banova/error.hpp"
#include "banova/region.hpp"
#include "banova/render.hpp"
#include "banova/sampler.hpp"
#include "banova/sim.hpp"
#include "banova/summary.hpp"

namespace {

using banova::Error;
using banova::ErrorKind;

struct CommonOpts {
    std::string input;
    std::string format = "text";
    std::size_t draws = 200000;
    std::uint64_t seed = 0;
    double ci = 0.95;
    std::string hyper_path;
    std::string export_draws;
    std::vector<double> levels = {0.50, 0.75, 0.95};
    std::string grid = "100x100";
    std::string out_prefix;
    std::string preset;
    std::size_t reps = 200;

    bool preset_paper() const { return preset == "paper"; }
};

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    std::size_t na = 0;
    std::size_t ne = 0;
    try {
        if (x == std::string::npos)
            throw std::invalid_argument("missing 'x'");
        na = std::stoul(text.substr(0, x));
        ne = std::stoul(text.substr(x + 1));
    } catch (const std::exception&) {
        banova::raise(ErrorKind::MalformedInput, "--grid expects NAxNE, got '" + text + "'");
    }
    if (na < 2 || ne < 2)
        banova::raise(ErrorKind::MalformedInput, "--grid needs at least 2 cells per axis");
    return {na, ne};
}

banova::Hyperparameters load_hyper(const banova::BalancedOneWayData& data,
                                   const std::string& path) {
    banova::Hyperparameters h = banova::default_hyperparameters(data);
    if (path.empty())
        return h;
    std::ifstream in(path);
    if (!in)
        banova::raise(ErrorKind::EmptyInput, "cannot open hyperparameter file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        banova::raise(ErrorKind::MalformedInput, std::string("hyperparameter JSON: ") + e.what());
    }
    static const char* known[] = {"alpha0", "tau_alpha", "tau_eps", "kappa_eps",
                                  "u_alpha", "v_alpha",  "u_eps",   "v_eps"};
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* name : known)
            ok = ok || key == name;
        if (!ok)
            banova::raise(ErrorKind::MalformedInput, "unknown hyperparameter field '" + key + "'");
        if (!value.is_number())
            banova::raise(ErrorKind::MalformedInput, "hyperparameter '" + key + "' must be numeric");
    }
    if (j.contains("alpha0")) h.alpha0 = j["alpha0"].get<double>();
    if (j.contains("tau_alpha")) h.tau_alpha = j["tau_alpha"].get<double>();
    if (j.contains("tau_eps")) h.tau_eps = j["tau_eps"].get<double>();
    if (j.contains("u_alpha")) h.u_alpha = j["u_alpha"].get<double>();
    if (j.contains("v_alpha")) h.v_alpha = j["v_alpha"].get<double>();
    if (j.contains("u_eps")) h.u_eps = j["u_eps"].get<double>();
    if (j.contains("v_eps")) h.v_eps = j["v_eps"].get<double>();
    if (j.contains("kappa_eps"))
        h.kappa_eps = j["kappa_eps"].get<double>();
    else
        h.kappa_eps = h.tau_alpha / data.n_reps(); // keep conjugacy when tau_alpha changes
    return h;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        banova::raise(ErrorKind::MalformedInput, "cannot write '" + path + "'");
    out << contents;
}

int run_classic(const CommonOpts& opts) {
    const banova::BalancedOneWayData data = banova::load_csv_file(opts.input);
    const banova::ClassicalTable table = banova::fixed_effects_table(data);
    if (opts.format == "json")
        std::cout << banova::classical_to_json(table).dump(2) << "\n";
    else if (opts.format == "csv")
        banova::render_classical_csv(std::cout, table);
    else
        banova::render_classical_text(std::cout, table);
    return 0;
}

int run_banova(const CommonOpts& opts) {
    const banova::BalancedOneWayData data = banova::load_csv_file(opts.input);
    if (opts.draws < 1000)
        banova::raise(ErrorKind::TooFewDraws, "banova needs --draws >= 1000");
    const banova::Hyperparameters hyper = load_hyper(data, opts.hyper_path);
    const banova::OneWayPosterior post = banova::posterior_update(hyper, data);
    const banova::PosteriorSample draws = banova::sample(post, opts.draws, opts.seed);
    const banova::BanovaTable table = banova::banova_table(draws, opts.ci);
    const double null_mass = banova::pr_null(draws);

    if (opts.format == "json") {
        nlohmann::json j = banova::banova_to_json(table, null_mass);
        j["intervals"] = banova::intervals_to_json(banova::interval_plot_data(table, draws));
        std::cout << j.dump(2) << "\n";
    } else if (opts.format == "csv") {
        banova::render_banova_csv(std::cout, table, null_mass);
    } else {
        banova::render_banova_text(std::cout, table, null_mass);
    }

    if (!opts.export_draws.empty()) {
        std::ofstream out(opts.export_draws, std::ios::binary);
        if (!out)
            banova::raise(ErrorKind::MalformedInput, "cannot write '" + opts.export_draws + "'");
        banova::write_draws_csv(out, draws);
    }
    return 0;
}

int run_region(const CommonOpts& opts) {
    const banova::BalancedOneWayData data = banova::load_csv_file(opts.input);
    const auto [na, ne] = parse_grid(opts.grid);

    banova::GridSpec like_spec = banova::default_likelihood_grid(data, na, ne);
    const banova::RegionGrid like =
        banova::relative_likelihood_grid(data, like_spec, opts.levels);

    const banova::OneWayPosterior post =
        banova::posterior_update(banova::default_hyperparameters(data), data);
    const banova::PosteriorSample draws = banova::sample(post, opts.draws, opts.seed);
    const banova::RegionGrid hpd =
        banova::hpd_region_grid(draws, banova::default_hpd_grid(draws, na, ne), opts.levels);

    const std::string prefix = opts.out_prefix.empty() ? "region" : opts.out_prefix;
    const bool json = opts.format == "json";
    const std::string ext = json ? ".json" : ".csv";
    auto emit = [&](const std::string& name, const banova::RegionGrid& grid) {
        std::ostringstream body;
        if (json)
            body << banova::region_to_json(grid).dump(2) << "\n";
        else
            banova::write_region_csv(body, grid);
        write_file(name, body.str());
        std::cout << "wrote " << name << "\n";
    };
    emit(prefix + "_likelihood" + ext, like);
    emit(prefix + "_hpd" + ext, hpd);
    return 0;
}

int run_simulate(const CommonOpts& opts) {
    if (!opts.preset.empty() && !opts.preset_paper())
        banova::raise(ErrorKind::MalformedInput, "unknown preset '" + opts.preset + "'");
    banova::SimSpec case_a;
    banova::SimSpec case_b;
    if (opts.preset_paper()) {
        case_a = banova::preset_case_a();
        case_b = banova::preset_case_b();
    } else if (!opts.input.empty()) {
        std::ifstream in(opts.input);
        if (!in)
            banova::raise(ErrorKind::EmptyInput, "cannot open spec '" + opts.input + "'");
        nlohmann::json j;
        try {
            in >> j;
            case_a = j.at("case_a").get<banova::SimSpec>();
            case_b = j.at("case_b").get<banova::SimSpec>();
        } catch (const nlohmann::json::exception& e) {
            banova::raise(ErrorKind::MalformedInput, std::string("sim spec JSON: ") + e.what());
        }
    } else {
        banova::raise(ErrorKind::MalformedInput, "simulate needs a spec file or --preset paper");
    }

    const banova::StudyReport report =
        banova::replicate_study(case_a, case_b, opts.reps, opts.draws, opts.seed);

    const std::string prefix = opts.out_prefix.empty() ? "study" : opts.out_prefix;
    std::ostringstream csv;
    banova::write_replicates_csv(csv, report);
    write_file(prefix + "_replicates.csv", csv.str());
    const nlohmann::json agg = banova::aggregate_to_json(report);
    write_file(prefix + "_aggregate.json", agg.dump(2) + "\n");
    std::cout << "wrote " << prefix << "_replicates.csv\n";
    std::cout << "wrote " << prefix << "_aggregate.json\n";
    std::cout << agg.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Comprehensive (hierarchical Bayesian) one-way analysis of variance"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto add_sampling = [&](CLI::App* cmd) {
        cmd->add_option("--draws", opts.draws, "posterior draws")->capture_default_str();
        cmd->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
    };

    CLI::App* classic = app.add_subcommand("classic", "fixed-effects ANOVA table");
    classic->add_option("input", opts.input, "CSV with header group,value")->required();
    classic->add_option("--format", opts.format, "text|json|csv")->capture_default_str();

    CLI::App* bay = app.add_subcommand("banova", "Bayesian ANOVA table");
    bay->add_option("input", opts.input, "CSV with header group,value")->required();
    bay->add_option("--format", opts.format, "text|json|csv")->capture_default_str();
    add_sampling(bay);
    bay->add_option("--ci", opts.ci, "uncertainty interval level")->capture_default_str();
    bay->add_option("--hyper", opts.hyper_path, "JSON hyperparameter overrides");
    bay->add_option("--export-draws", opts.export_draws, "write draw CSV to this path");

    CLI::App* region = app.add_subcommand("region", "likelihood and HPD region grids");
    region->add_option("input", opts.input, "CSV with header group,value")->required();
    region->add_option("--format", opts.format, "csv|json")->capture_default_str();
    add_sampling(region);
    region->add_option("--levels", opts.levels, "confidence levels")->delimiter(',')
        ->capture_default_str();
    region->add_option("--grid", opts.grid, "grid size NAxNE")->capture_default_str();
    region->add_option("--out", opts.out_prefix, "output file prefix (default: region)");

    CLI::App* simulate = app.add_subcommand("simulate", "two-case replication study");
    simulate->add_option("spec", opts.input, "JSON file with case_a and case_b");
    simulate->add_option("--preset", opts.preset, "built-in preset name (paper)");
    simulate->add_option("--reps", opts.reps, "replicates per case")->capture_default_str();
    add_sampling(simulate);
    simulate->add_option("--out", opts.out_prefix, "output file prefix (default: study)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classic->parsed())
            return run_classic(opts);
        if (bay->parsed())
            return run_banova(opts);
        if (region->parsed())
            return run_region(opts);
        if (simulate->parsed())
            return run_simulate(opts);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return banova::is_degenerate(e.kind()) ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
