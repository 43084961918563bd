// Command-line surface: ingest samples and learning curves, run the six
// difference tests, drive the Monte Carlo calibration grid, and emit
// plot-ready CSV/JSON artifacts with embedded run manifests.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "statcmp/advisor.hpp"
#include "statcmp/io.hpp"
#include "statcmp/mc_engine.hpp"
#include "statcmp/stattests.hpp"

using json = nlohmann::json;
using namespace statcmp;

namespace {

std::size_t env_threads() {
    if (const char* v = std::getenv("STATCMP_THREADS")) {
        const long n = std::atol(v);
        if (n > 0) return static_cast<std::size_t>(n);
    }
    return 0;
}

struct PairFlags {
    std::string family1 = "normal";
    std::string family2 = "normal";
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    double lognormal_sigma = 1.0;
    double bimodal_delta = 0.9;
    std::string file1;
    std::string file2;

    void attach(CLI::App* cmd) {
        cmd->add_option("--family1", family1, "first distribution family")
            ->check(CLI::IsMember({"normal", "lognormal", "bimodal", "empirical"}));
        cmd->add_option("--family2", family2, "second distribution family")
            ->check(CLI::IsMember({"normal", "lognormal", "bimodal", "empirical"}));
        cmd->add_option("--sigma1", sigma1, "first distribution sd");
        cmd->add_option("--sigma2", sigma2, "second distribution sd");
        cmd->add_option("--lognormal-sigma", lognormal_sigma,
                        "underlying sigma of lognormal families");
        cmd->add_option("--bimodal-delta", bimodal_delta,
                        "bimodal mode separation fraction in (0,1)");
        cmd->add_option("--file1", file1, "sample file backing an empirical family1");
        cmd->add_option("--file2", file2, "sample file backing an empirical family2");
    }

    DistributionSpec build(const std::string& family_str, double sigma,
                           const std::string& file) const {
        const Family family = family_from_name(family_str);
        if (family == Family::empirical) {
            if (file.empty())
                throw CLI::ValidationError("empirical family needs --file1/--file2");
            return empirical_from_file(file, CenterMode::mean);
        }
        Shape shape;
        shape.lognormal_sigma = lognormal_sigma;
        shape.bimodal_delta_fraction = bimodal_delta;
        return make_standardized(family, shape, CenterMode::mean, sigma, 0.0);
    }

    DistributionPair pair() const {
        DistributionPair p{build(family1, sigma1, file1), build(family2, sigma2, file2),
                           family1 + "/" + family2};
        return p;
    }

    json echo() const {
        return json{{"family1", family1}, {"family2", family2},
                    {"sigma1", sigma1},   {"sigma2", sigma2},
                    {"lognormal_sigma", lognormal_sigma},
                    {"bimodal_delta", bimodal_delta},
                    {"file1", file1},     {"file2", file2}};
    }
};

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        write_text_file(out_path, doc.dump(2) + "\n");
    }
}

std::string csv_with_manifest(const RunManifest& manifest, const std::string& body) {
    return "# manifest: " + to_json(manifest).dump() + "\n" + body;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statcmp: statistically rigorous comparison of algorithm performance samples"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::size_t reps = 10000;
    std::size_t n_boot = 1000;
    std::size_t n_perm = 1000;
    std::string out_path;
    std::string format = "csv";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "significance level");
        cmd->add_option("--seed", seed, "base random seed");
        cmd->add_option("--reps", reps, "Monte Carlo repetitions");
        cmd->add_option("--boot", n_boot, "bootstrap resamples");
        cmd->add_option("--perm", n_perm, "permutation resamples");
        cmd->add_option("--out", out_path, "output file (stdout if omitted)");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json", "md"}));
    };

    // test
    auto* cmd_test = app.add_subcommand("test", "compare two sample files");
    std::string sample1_path, sample2_path;
    std::vector<std::string> test_names = {"t_test", "welch", "mann_whitney",
                                           "ranked_t", "bootstrap_ci", "permutation"};
    cmd_test->add_option("sample1", sample1_path, "first sample file")->required();
    cmd_test->add_option("sample2", sample2_path, "second sample file")->required();
    cmd_test->add_option("--tests", test_names, "tests to run")->delimiter(',');
    add_common(cmd_test);

    // grid
    auto* cmd_grid = app.add_subcommand("grid", "run a calibration grid from a config file");
    std::string config_path;
    cmd_grid->add_option("--config", config_path, "grid config JSON")->required();
    add_common(cmd_grid);

    // fpr-curve
    auto* cmd_fpr = app.add_subcommand("fpr-curve", "false-positive rate vs sample size");
    PairFlags fpr_pair;
    std::string fpr_test = "welch";
    std::vector<std::size_t> fpr_sizes = {2, 3, 5, 10, 15, 20, 30, 40, 50, 100};
    fpr_pair.attach(cmd_fpr);
    cmd_fpr->add_option("--test", fpr_test, "test id");
    cmd_fpr->add_option("--sizes", fpr_sizes, "sample sizes")->delimiter(',');
    add_common(cmd_fpr);

    // power-table
    auto* cmd_power = app.add_subcommand("power-table", "statistical power tables");
    PairFlags power_pair;
    std::vector<std::string> power_tests = {"t_test", "welch", "mann_whitney",
                                            "ranked_t", "bootstrap_ci", "permutation"};
    std::vector<double> power_effects = {0.5, 1.0, 2.0};
    std::vector<std::size_t> power_sizes = {2, 3, 5, 10, 15, 20, 30, 40, 50, 100};
    power_pair.attach(cmd_power);
    cmd_power->add_option("--tests", power_tests, "tests (columns)")->delimiter(',');
    cmd_power->add_option("--effects", power_effects, "relative effect sizes")->delimiter(',');
    cmd_power->add_option("--sizes", power_sizes, "sample sizes (rows)")->delimiter(',');
    add_common(cmd_power);

    // advise
    auto* cmd_advise = app.add_subcommand("advise", "recommend a sample size");
    PairFlags advise_pair;
    double advise_epsilon = 1.0;
    double advise_power = 0.8;
    std::string advise_test = "welch";
    advise_pair.attach(cmd_advise);
    cmd_advise->add_option("--epsilon", advise_epsilon, "expected relative effect size")
        ->required();
    cmd_advise->add_option("--power", advise_power, "target statistical power");
    cmd_advise->add_option("--test", advise_test, "test id");
    add_common(cmd_advise);

    // compare-curves
    auto* cmd_curves = app.add_subcommand("compare-curves", "compare two learning-curve sets");
    std::string curves_a, curves_b;
    std::size_t nc = 0, ncrit = 0;
    std::string curves_test = "welch";
    cmd_curves->add_option("curves-a", curves_a, "learning curves of algorithm A")->required();
    cmd_curves->add_option("curves-b", curves_b, "learning curves of algorithm B")->required();
    cmd_curves->add_option("--nc", nc, "number of compared steps N_c")->required();
    cmd_curves->add_option("--ncrit", ncrit, "required rejections N_crit")->required();
    cmd_curves->add_option("--test", curves_test, "test id");
    add_common(cmd_curves);

    // describe
    auto* cmd_describe = app.add_subcommand("describe", "per-step curve summary");
    std::string describe_path;
    std::string band = "p10-90";
    std::string center = "mean";
    cmd_describe->add_option("curves", describe_path, "learning-curve file")->required();
    cmd_describe->add_option("--band", band, "sd | se | pLO-HI (percent)");
    cmd_describe->add_option("--center", center, "mean | median")
        ->check(CLI::IsMember({"mean", "median"}));
    add_common(cmd_describe);

    CLI11_PARSE(app, argc, argv);

    try {
        ResamplingOptions opts;
        opts.n_boot = n_boot;
        opts.n_perm = n_perm;
        const std::size_t threads = env_threads();

        if (*cmd_test) {
            const Sample x1 = read_sample_file(sample1_path, "sample1");
            const Sample x2 = read_sample_file(sample2_path, "sample2");
            RngStream rng(seed, 0);
            json outcomes = json::array();
            std::cout << "comparing " << sample1_path << " (N=" << x1.values.size()
                      << ") vs " << sample2_path << " (N=" << x2.values.size()
                      << ") at alpha=" << alpha << "\n";
            for (const auto& name : test_names) {
                const TestId id = test_from_name(name);
                const TestOutcome out = run_test(id, x1, x2, alpha, opts, &rng);
                outcomes.push_back(to_json(out));
                std::cout << "  " << test_name(id) << ": ";
                if (out.p_value)
                    std::cout << "p=" << format_double(*out.p_value);
                else
                    std::cout << "ci=[" << format_double(*out.ci_low) << ", "
                              << format_double(*out.ci_high) << "]";
                std::cout << (out.reject ? "  -> significant difference"
                                         : "  -> no significant difference")
                          << "\n";
            }
            const EffectEstimate eff = effect_estimate(x1, x2);
            std::cout << "effect: epsilon_mean=" << format_double(eff.epsilon_mean)
                      << " epsilon_median=" << format_double(eff.epsilon_median)
                      << " sigma_pool=" << format_double(eff.sigma_pool) << "\n";
            if (!out_path.empty()) {
                RunManifest manifest{"test",
                                     {sample1_path, sample2_path},
                                     json{{"tests", test_names},
                                          {"alpha", alpha},
                                          {"seed", seed},
                                          {"n_boot", n_boot},
                                          {"n_perm", n_perm}}};
                emit(json{{"manifest", to_json(manifest)},
                          {"outcomes", outcomes},
                          {"effect", to_json(eff)}},
                     out_path);
            }
        } else if (*cmd_grid) {
            GridConfig config = grid_config_from_file(config_path);
            if (config.n_threads == 0) config.n_threads = threads;
            const ResultsGrid grid = run_grid(config, [](std::size_t done, std::size_t total) {
                std::cerr << "\r" << done << "/" << total << " cells" << std::flush;
                if (done == total) std::cerr << "\n";
            });
            RunManifest manifest{"grid", {config_path}, to_json(config)};
            if (format == "json")
                emit(to_json(grid, manifest), out_path);
            else if (out_path.empty())
                std::cout << csv_with_manifest(manifest, results_grid_to_csv(grid));
            else
                write_text_file(out_path, csv_with_manifest(manifest, results_grid_to_csv(grid)));
        } else if (*cmd_fpr) {
            const DistributionPair pair = fpr_pair.pair();
            const auto curve = fpr_curve(pair, test_from_name(fpr_test), fpr_sizes, reps,
                                         alpha, seed, opts, threads);
            RunManifest manifest{"fpr-curve",
                                 {},
                                 json{{"pair", fpr_pair.echo()},
                                      {"test", fpr_test},
                                      {"sizes", fpr_sizes},
                                      {"reps", reps},
                                      {"alpha", alpha},
                                      {"seed", seed}}};
            if (format == "json") {
                json points = json::array();
                for (const auto& p : curve)
                    points.push_back(json{{"sample_size", p.sample_size},
                                          {"alpha_star", p.alpha_star},
                                          {"se", p.se}});
                emit(json{{"manifest", to_json(manifest)}, {"curve", points}}, out_path);
            } else {
                std::string body = "sample_size,alpha_star,se\n";
                for (const auto& p : curve)
                    body += std::to_string(p.sample_size) + "," +
                            format_double(p.alpha_star) + "," + format_double(p.se) + "\n";
                const std::string text = csv_with_manifest(manifest, body);
                if (out_path.empty()) std::cout << text;
                else write_text_file(out_path, text);
            }
        } else if (*cmd_power) {
            const DistributionPair pair = power_pair.pair();
            std::vector<TestId> ids;
            for (const auto& n : power_tests) ids.push_back(test_from_name(n));
            const auto tables = power_table(pair, ids, power_effects, power_sizes, reps,
                                            alpha, seed, opts, threads);
            RunManifest manifest{"power-table",
                                 {},
                                 json{{"pair", power_pair.echo()},
                                      {"tests", power_tests},
                                      {"effects", power_effects},
                                      {"sizes", power_sizes},
                                      {"reps", reps},
                                      {"alpha", alpha},
                                      {"seed", seed}}};
            if (format == "json") {
                json jt = json::array();
                for (const auto& t : tables) {
                    json rows = json::array();
                    for (const auto& r : t.rows)
                        rows.push_back(json{{"n", r.sample_size},
                                            {"power", r.power},
                                            {"se", r.se}});
                    jt.push_back(json{{"effect_size", t.effect_size}, {"rows", rows}});
                }
                emit(json{{"manifest", to_json(manifest)}, {"tables", jt}}, out_path);
            } else {
                const std::string text = render_power_tables(tables, format == "md");
                if (out_path.empty()) std::cout << text;
                else write_text_file(out_path, csv_with_manifest(manifest, text));
            }
        } else if (*cmd_advise) {
            const DistributionPair pair = advise_pair.pair();
            const auto rec =
                recommend_sample_size(advise_epsilon, advise_power, test_from_name(advise_test),
                                      pair, alpha, reps, seed, opts, threads);
            if (rec.n)
                std::cout << "recommended sample size: N=" << *rec.n
                          << " (estimated power " << format_double(rec.achieved_power)
                          << " +/- " << format_double(rec.se) << ")\n";
            else
                std::cout << "no sample size on the candidate ladder reaches power "
                          << advise_power << "\n";
            if (!out_path.empty()) {
                RunManifest manifest{"advise",
                                     {},
                                     json{{"pair", advise_pair.echo()},
                                          {"epsilon", advise_epsilon},
                                          {"target_power", advise_power},
                                          {"test", advise_test},
                                          {"alpha", alpha},
                                          {"reps", reps},
                                          {"seed", seed}}};
                emit(json{{"manifest", to_json(manifest)}, {"recommendation", to_json(rec)}},
                     out_path);
            }
        } else if (*cmd_curves) {
            if (ncrit > nc)
                throw CLI::ValidationError("--ncrit must not exceed --nc");
            const LearningCurveSet a = read_learning_curves(curves_a, "a");
            const LearningCurveSet b = read_learning_curves(curves_b, "b");
            CurveComparisonCriterion criterion{nc, ncrit, alpha, test_from_name(curves_test)};
            RngStream rng(seed, 0);
            const auto report = compare_learning_curves(a, b, criterion, rng, opts);
            std::cout << "verdict: " << verdict_name(report.verdict) << " ("
                      << report.n_rejections << "/" << nc
                      << " rejections at corrected alpha "
                      << format_double(criterion.corrected_alpha()) << ")\n";
            if (!out_path.empty()) {
                RunManifest manifest{"compare-curves",
                                     {curves_a, curves_b},
                                     json{{"nc", nc},
                                          {"ncrit", ncrit},
                                          {"alpha", alpha},
                                          {"test", curves_test},
                                          {"seed", seed}}};
                emit(json{{"manifest", to_json(manifest)}, {"report", to_json(report)}},
                     out_path);
            }
        } else if (*cmd_describe) {
            const LearningCurveSet set = read_learning_curves(describe_path, "");
            BandSpec band_spec;
            if (band == "sd") band_spec.kind = BandKind::sd;
            else if (band == "se") band_spec.kind = BandKind::se;
            else {
                band_spec.kind = BandKind::interpercentile;
                const auto dash = band.find('-');
                if (band.empty() || band[0] != 'p' || dash == std::string::npos)
                    throw CLI::ValidationError("--band must be sd, se, or pLO-HI");
                band_spec.p_lo = std::stod(band.substr(1, dash - 1)) / 100.0;
                band_spec.p_hi = std::stod(band.substr(dash + 1)) / 100.0;
            }
            const auto rows = describe_curves(
                set, band_spec, center == "mean" ? CenterKind::mean : CenterKind::median);
            RunManifest manifest{"describe",
                                 {describe_path},
                                 json{{"band", band}, {"center", center}}};
            std::string body = "step,center,band_low,band_high\n";
            for (const auto& r : rows)
                body += std::to_string(r.step) + "," + format_double(r.center) + "," +
                        format_double(r.band_low) + "," + format_double(r.band_high) + "\n";
            const std::string text = csv_with_manifest(manifest, body);
            if (out_path.empty()) std::cout << text;
            else write_text_file(out_path, text);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
