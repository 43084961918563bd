#include "statcmp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace statcmp {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

json to_json(const RunManifest& m) {
    return json{{"command", m.command},
                {"inputs", m.inputs},
                {"config", m.config},
                {"tool_version", m.tool_version}};
}

RunManifest manifest_from_json(const json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.inputs = j.at("inputs").get<std::vector<std::string>>();
    m.config = j.at("config");
    m.tool_version = j.at("tool_version").get<std::string>();
    return m;
}

namespace {

std::string center_name(CenterMode m) {
    return m == CenterMode::mean ? "mean" : "median";
}

CenterMode center_from_name(const std::string& s) {
    if (s == "mean") return CenterMode::mean;
    if (s == "median") return CenterMode::median;
    throw std::invalid_argument("unknown center mode: " + s);
}

}  // namespace

json to_json(const DistributionSpec& spec) {
    json j{{"family", family_name(spec.family())},
           {"center", center_name(spec.center_mode())},
           {"sigma", spec.sigma()},
           {"shift", spec.shift()}};
    switch (spec.family()) {
        case Family::normal: break;
        case Family::lognormal:
            j["lognormal_sigma"] = spec.shape().lognormal_sigma;
            break;
        case Family::bimodal:
            j["bimodal_delta_fraction"] = spec.shape().bimodal_delta_fraction;
            break;
        case Family::empirical:
            j["source"] = spec.shape().empirical_source;
            break;
    }
    return j;
}

DistributionSpec spec_from_json(const json& j) {
    const Family family = family_from_name(j.at("family").get<std::string>());
    Shape shape;
    if (j.contains("lognormal_sigma"))
        shape.lognormal_sigma = j.at("lognormal_sigma").get<double>();
    if (j.contains("bimodal_delta_fraction"))
        shape.bimodal_delta_fraction = j.at("bimodal_delta_fraction").get<double>();
    if (family == Family::empirical) {
        if (j.contains("source_file")) {
            Sample s = read_sample_file(j.at("source_file").get<std::string>(), "");
            shape.empirical_source = s.values;
        } else {
            shape.empirical_source = j.at("source").get<std::vector<double>>();
        }
    }
    const auto center = center_from_name(j.value("center", "mean"));
    double sigma = j.value("sigma", 0.0);
    if (family == Family::empirical && sigma == 0.0) {
        // default: keep the source sd
        Sample s{shape.empirical_source, ""};
        sigma = s.sd();
    } else if (sigma == 0.0) {
        sigma = 1.0;
    }
    return make_standardized(family, std::move(shape), center, sigma,
                             j.value("shift", 0.0));
}

json to_json(const TestOutcome& out) {
    json j{{"test", test_name(out.test_id)},
           {"statistic", out.statistic},
           {"reject", out.reject},
           {"alpha", out.alpha},
           {"compares", out.compares == Compares::means ? "means" : "medians"}};
    if (out.p_value) j["p_value"] = *out.p_value;
    if (out.ci_low) j["ci_low"] = *out.ci_low;
    if (out.ci_high) j["ci_high"] = *out.ci_high;
    return j;
}

json to_json(const EffectEstimate& e) {
    return json{{"delta_mean", e.delta_mean},
                {"delta_median", e.delta_median},
                {"sigma_pool", e.sigma_pool},
                {"epsilon_mean", e.epsilon_mean},
                {"epsilon_median", e.epsilon_median}};
}

json to_json(const GridConfig& config) {
    json pairs = json::array();
    for (const auto& p : config.pairs)
        pairs.push_back(json{{"label", p.label},
                             {"first", to_json(p.first)},
                             {"second", to_json(p.second)}});
    json tests = json::array();
    for (TestId t : config.tests) tests.push_back(test_name(t));
    return json{{"pairs", pairs},
                {"tests", tests},
                {"effect_sizes", config.effect_sizes},
                {"sample_sizes", config.sample_sizes},
                {"n_repetitions", config.n_repetitions},
                {"alpha", config.alpha},
                {"seed", config.base_seed},
                {"n_boot", config.resampling.n_boot},
                {"n_perm", config.resampling.n_perm},
                {"exact_enumeration_cap", config.resampling.exact_enumeration_cap}};
}

GridConfig grid_config_from_json(const json& j) {
    static const char* known_keys[] = {
        "pairs", "tests", "effect_sizes", "sample_sizes", "n_repetitions",
        "alpha", "seed", "n_boot", "n_perm", "exact_enumeration_cap", "n_threads"};
    std::vector<std::string> problems;
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : known_keys)
            if (it.key() == k) known = true;
        if (!known) problems.push_back("unknown config key: '" + it.key() + "'");
    }
    for (const char* required : {"pairs", "tests", "effect_sizes", "sample_sizes"})
        if (!j.contains(required))
            problems.push_back(std::string("missing config key: '") + required + "'");
    if (!problems.empty()) {
        std::ostringstream msg;
        msg << "invalid grid config:";
        for (const auto& p : problems) msg << "\n  - " << p;
        throw std::invalid_argument(msg.str());
    }

    GridConfig config;
    for (const auto& jp : j.at("pairs")) {
        DistributionPair pair{spec_from_json(jp.at("first")),
                              spec_from_json(jp.at("second")),
                              jp.value("label", "")};
        if (pair.label.empty())
            pair.label = family_name(pair.first.family()) + "/" +
                         family_name(pair.second.family());
        config.pairs.push_back(std::move(pair));
    }
    for (const auto& jt : j.at("tests"))
        config.tests.push_back(test_from_name(jt.get<std::string>()));
    config.effect_sizes = j.at("effect_sizes").get<std::vector<double>>();
    config.sample_sizes = j.at("sample_sizes").get<std::vector<std::size_t>>();
    config.n_repetitions = j.value("n_repetitions", std::size_t{10000});
    config.alpha = j.value("alpha", 0.05);
    config.base_seed = j.value("seed", std::uint64_t{0});
    config.resampling.n_boot = j.value("n_boot", std::size_t{1000});
    config.resampling.n_perm = j.value("n_perm", std::size_t{1000});
    config.resampling.exact_enumeration_cap =
        j.value("exact_enumeration_cap", std::uint64_t{100000});
    config.n_threads = j.value("n_threads", std::size_t{0});
    config.validate();
    return config;
}

GridConfig grid_config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return grid_config_from_json(j);
}

json to_json(const ResultsGrid& grid, const RunManifest& manifest) {
    return json{{"manifest", to_json(manifest)},
                {"config", to_json(grid.config)},
                {"rejection_rate", grid.rejection_rate},
                {"standard_error", grid.standard_error}};
}

ResultsGrid results_grid_from_json(const json& j) {
    ResultsGrid grid;
    grid.config = grid_config_from_json(j.at("config"));
    grid.rejection_rate =
        j.at("rejection_rate")
            .get<std::vector<std::vector<std::vector<std::vector<double>>>>>();
    grid.standard_error =
        j.at("standard_error")
            .get<std::vector<std::vector<std::vector<std::vector<double>>>>>();
    return grid;
}

std::string results_grid_to_csv(const ResultsGrid& grid) {
    std::ostringstream out;
    out << "pair,test,effect_size,sample_size,rejection_rate,standard_error\n";
    const auto& c = grid.config;
    for (std::size_t ip = 0; ip < c.pairs.size(); ++ip)
        for (std::size_t it = 0; it < c.tests.size(); ++it)
            for (std::size_t ie = 0; ie < c.effect_sizes.size(); ++ie)
                for (std::size_t is = 0; is < c.sample_sizes.size(); ++is)
                    out << c.pairs[ip].label << ',' << test_name(c.tests[it]) << ','
                        << format_double(c.effect_sizes[ie]) << ','
                        << c.sample_sizes[is] << ','
                        << format_double(grid.rate(ip, it, ie, is)) << ','
                        << format_double(grid.se(ip, it, ie, is)) << '\n';
    return out.str();
}

json to_json(const CurveComparisonReport& report) {
    json steps = json::array();
    for (const auto& s : report.steps)
        steps.push_back(json{{"step", s.step},
                             {"outcome", to_json(s.outcome)},
                             {"delta", s.delta}});
    return json{{"verdict", verdict_name(report.verdict)},
                {"n_rejections", report.n_rejections},
                {"n_comparisons", report.criterion.n_comparisons},
                {"n_required", report.criterion.n_required},
                {"alpha", report.criterion.alpha},
                {"corrected_alpha", report.criterion.corrected_alpha()},
                {"test", test_name(report.criterion.test)},
                {"steps", steps}};
}

json to_json(const SampleSizeRecommendation& rec) {
    json ladder = json::array();
    for (const auto& [n, p] : rec.ladder_powers)
        ladder.push_back(json{{"n", n}, {"power", p}});
    json j{{"ladder", ladder}};
    if (rec.n) {
        j["recommended_n"] = *rec.n;
        j["achieved_power"] = rec.achieved_power;
        j["se"] = rec.se;
    } else {
        j["recommended_n"] = nullptr;
    }
    return j;
}

std::string render_power_tables(const std::vector<PowerTable>& tables, bool markdown) {
    std::ostringstream out;
    for (const auto& table : tables) {
        out << (markdown ? "### " : "") << "Relative effect size: "
            << format_double(table.effect_size) << "\n";
        const std::string sep = markdown ? " | " : "  ";
        if (markdown) out << "| ";
        out << std::setw(markdown ? 0 : 5) << "N";
        for (TestId t : table.tests) out << sep << test_name(t);
        if (markdown) out << " |";
        out << "\n";
        if (markdown) {
            out << "| ---";
            for (std::size_t i = 0; i < table.tests.size(); ++i) out << " | ---";
            out << " |\n";
        }
        for (const auto& row : table.rows) {
            if (markdown) out << "| ";
            out << std::setw(markdown ? 0 : 5) << row.sample_size;
            for (std::size_t i = 0; i < row.power.size(); ++i) {
                std::ostringstream cell;
                cell << std::fixed << std::setprecision(3) << row.power[i];
                if (row.power[i] >= PowerTable::kBoldThreshold) cell << '*';
                out << sep << std::setw(markdown ? 0 : 12) << cell.str();
            }
            if (markdown) out << " |";
            out << "\n";
        }
        out << "\n";
    }
    return out.str();
}

LearningCurveSet read_learning_curves(const std::string& path, const std::string& label) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open learning-curve file: " + path);
    LearningCurveSet set;
    set.label = label.empty() ? path : label;
    std::string line;
    std::size_t row = 0;
    std::size_t n_runs = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!header_seen) {
            header_seen = true;
            if (fields.empty() || fields[0] != "step")
                throw std::runtime_error(path + ": row " + std::to_string(row) +
                                         ": expected header starting with 'step'");
            n_runs = fields.size() - 1;
            if (n_runs == 0)
                throw std::runtime_error(path + ": header names no runs");
            set.runs.assign(n_runs, {});
            continue;
        }
        if (fields.size() != n_runs + 1)
            throw std::runtime_error(path + ": row " + std::to_string(row) +
                                     ": expected " + std::to_string(n_runs + 1) +
                                     " fields, got " + std::to_string(fields.size()));
        try {
            set.eval_steps.push_back(std::stoll(fields[0]));
            for (std::size_t i = 0; i < n_runs; ++i)
                set.runs[i].push_back(std::stod(fields[i + 1]));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": row " + std::to_string(row) +
                                     ": non-numeric field");
        }
    }
    set.validate();
    return set;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace statcmp
