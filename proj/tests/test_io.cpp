#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "statcmp/io.hpp"

using namespace statcmp;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/statcmp_io_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

GridConfig small_config() {
    GridConfig config;
    config.pairs = {{make_standardized(Family::normal, {}, CenterMode::mean, 1.0, 0.0),
                     make_standardized(Family::lognormal, {}, CenterMode::mean, 2.0, 0.0),
                     "normal/lognormal"}};
    config.tests = {TestId::welch, TestId::mann_whitney};
    config.effect_sizes = {0.0, 1.0};
    config.sample_sizes = {5, 10};
    config.n_repetitions = 200;
    config.base_seed = 13;
    return config;
}

}  // namespace

TEST_CASE("format_double round-trips") {
    for (double v : {0.05, 1.0 / 3.0, 1e-12, 123456.789, -0.0001}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("distribution spec JSON round-trip") {
    Shape shape;
    shape.lognormal_sigma = 0.75;
    auto spec = make_standardized(Family::lognormal, shape, CenterMode::median, 2.0, 0.3);
    auto back = spec_from_json(to_json(spec));
    CHECK(back.family() == spec.family());
    CHECK(back.center_mode() == spec.center_mode());
    CHECK(back.sigma() == spec.sigma());
    CHECK(back.shift() == spec.shift());
    CHECK(back.shape().lognormal_sigma == 0.75);

    Shape emp;
    emp.empirical_source = {1.0, 2.5, 4.0};
    auto espec = make_standardized(Family::empirical, emp, CenterMode::mean, 1.0, 0.0);
    auto eback = spec_from_json(to_json(espec));
    CHECK(eback.shape().empirical_source == emp.empirical_source);
}

TEST_CASE("grid config JSON round-trip and results grid round-trip") {
    GridConfig config = small_config();
    auto back = grid_config_from_json(to_json(config));
    CHECK(back.pairs.size() == 1);
    CHECK(back.tests == config.tests);
    CHECK(back.effect_sizes == config.effect_sizes);
    CHECK(back.sample_sizes == config.sample_sizes);
    CHECK(back.n_repetitions == config.n_repetitions);
    CHECK(back.base_seed == config.base_seed);

    const ResultsGrid grid = run_grid(config);
    RunManifest manifest{"grid", {"cfg.json"}, to_json(config)};
    const json doc = to_json(grid, manifest);
    const ResultsGrid reload = results_grid_from_json(doc);
    CHECK(reload.rejection_rate == grid.rejection_rate);
    CHECK(reload.standard_error == grid.standard_error);
    // replaying the reloaded config reproduces the CSV byte for byte
    const ResultsGrid rerun = run_grid(reload.config);
    CHECK(results_grid_to_csv(rerun) == results_grid_to_csv(grid));
}

TEST_CASE("manifest JSON round-trip") {
    RunManifest m{"power-table", {"a.txt", "b.txt"}, json{{"alpha", 0.05}}};
    auto back = manifest_from_json(to_json(m));
    CHECK(back.command == m.command);
    CHECK(back.inputs == m.inputs);
    CHECK(back.config == m.config);
    CHECK(back.tool_version == kToolVersion);
}

TEST_CASE("config errors enumerate all problems") {
    json bad{{"bogus_key", 1}, {"another", 2}, {"tests", json::array({"welch"})}};
    try {
        grid_config_from_json(bad);
        FAIL("expected config error");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bogus_key") != std::string::npos);
        CHECK(msg.find("another") != std::string::npos);
        CHECK(msg.find("pairs") != std::string::npos);
        CHECK(msg.find("effect_sizes") != std::string::npos);
    }
    json empty_tests = to_json(small_config());
    empty_tests["tests"] = json::array();
    CHECK_THROWS_AS(grid_config_from_json(empty_tests), std::invalid_argument);
}

TEST_CASE("results grid CSV has one row per cell") {
    GridConfig config = small_config();
    config.n_repetitions = 50;
    const ResultsGrid grid = run_grid(config);
    const std::string csv = results_grid_to_csv(grid);
    std::size_t rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == 1 + 2 * 2 * 2);  // header + tests x effects x sizes
    CHECK(csv.find("normal/lognormal") != std::string::npos);
    CHECK(csv.find("mann_whitney") != std::string::npos);
}

TEST_CASE("power table rendering marks entries above 0.8") {
    PowerTable table;
    table.tests = {TestId::t_test, TestId::welch};
    table.effect_size = 1.0;
    table.rows = {{10, {0.56, 0.55}, {0.005, 0.005}}, {20, {0.87, 0.86}, {0.003, 0.003}}};
    const std::string text = render_power_tables({table}, false);
    CHECK(text.find("0.870*") != std::string::npos);
    CHECK(text.find("0.560*") == std::string::npos);
    const std::string md = render_power_tables({table}, true);
    CHECK(md.find("| ---") != std::string::npos);
}

TEST_CASE("learning curve CSV ingestion") {
    auto path = write_temp("curves.csv",
                           "step,run_0,run_1,run_2\n"
                           "1000,1.0,2.0,3.0\n"
                           "2000,1.5,2.5,3.5\n");
    auto set = read_learning_curves(path, "algo");
    CHECK(set.eval_steps == std::vector<std::int64_t>{1000, 2000});
    REQUIRE(set.runs.size() == 3);
    CHECK(set.runs[1][1] == 2.5);
    std::remove(path.c_str());

    auto bad = write_temp("curves_bad.csv", "step,run_0\n1000,1.0\n2000\n");
    CHECK_THROWS_AS(read_learning_curves(bad, ""), std::runtime_error);
    std::remove(bad.c_str());

    auto noheader = write_temp("curves_nh.csv", "1000,1.0\n");
    CHECK_THROWS_AS(read_learning_curves(noheader, ""), std::runtime_error);
    std::remove(noheader.c_str());
}

TEST_CASE("grid config file parsing") {
    const std::string cfg = R"({
      "pairs": [{"first": {"family": "normal"},
                 "second": {"family": "bimodal", "bimodal_delta_fraction": 0.9}}],
      "tests": ["t_test", "welch"],
      "effect_sizes": [0, 0.5],
      "sample_sizes": [5, 10],
      "n_repetitions": 100,
      "alpha": 0.05,
      "seed": 4
    })";
    auto path = write_temp("grid.json", cfg);
    auto config = grid_config_from_file(path);
    CHECK(config.pairs[0].label == "normal/bimodal");
    CHECK(config.pairs[0].second.shape().bimodal_delta_fraction == 0.9);
    std::remove(path.c_str());
    CHECK_THROWS_AS(grid_config_from_file("/nonexistent.json"), std::runtime_error);
}
