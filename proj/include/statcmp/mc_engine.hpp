#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "statcmp/distributions.hpp"
#include "statcmp/stattests.hpp"

namespace statcmp {

struct DistributionPair {
    DistributionSpec first;
    DistributionSpec second;
    std::string label;
};

struct GridConfig {
    std::vector<DistributionPair> pairs;
    std::vector<TestId> tests;
    std::vector<double> effect_sizes;   // relative (epsilon); 0 = null
    std::vector<std::size_t> sample_sizes;
    std::size_t n_repetitions = 10000;
    double alpha = 0.05;
    std::uint64_t base_seed = 0;
    ResamplingOptions resampling;
    std::size_t n_threads = 0;  // 0: hardware concurrency

    void validate() const;  // throws invalid_argument listing every problem
};

// rejection_rate[pair][test][effect][size]; effect index 0 holds the false
// positive rate when effect_sizes[0] == 0.
struct ResultsGrid {
    GridConfig config;
    std::vector<std::vector<std::vector<std::vector<double>>>> rejection_rate;
    std::vector<std::vector<std::vector<std::vector<double>>>> standard_error;

    double rate(std::size_t pair, std::size_t test, std::size_t effect,
                std::size_t size) const {
        return rejection_rate[pair][test][effect][size];
    }
    double se(std::size_t pair, std::size_t test, std::size_t effect,
              std::size_t size) const {
        return standard_error[pair][test][effect][size];
    }
};

using ProgressSink = std::function<void(std::size_t cells_done, std::size_t cells_total)>;

// Runs the full grid. For each cell both specs are re-centered so the
// tested central tendency is 0, the second spec is shifted by
// epsilon * sigma_pool of the two spec sigmas, and n_repetitions
// sample/test/record rounds are averaged. Deterministic for a given
// base_seed regardless of thread count.
ResultsGrid run_grid(const GridConfig& config, ProgressSink progress = nullptr);

struct FprPoint {
    std::size_t sample_size;
    double alpha_star;
    double se;
};

// FPR-vs-N projection for a single pair and test (effect fixed at 0).
std::vector<FprPoint> fpr_curve(const DistributionPair& pair, TestId test,
                                const std::vector<std::size_t>& sample_sizes,
                                std::size_t n_repetitions, double alpha,
                                std::uint64_t base_seed,
                                const ResamplingOptions& opts = {},
                                std::size_t n_threads = 0);

struct PowerRow {
    std::size_t sample_size;
    std::vector<double> power;  // aligned with `tests`
    std::vector<double> se;
};

struct PowerTable {
    std::vector<TestId> tests;
    double effect_size;
    std::vector<PowerRow> rows;
    static constexpr double kBoldThreshold = 0.8;
};

// One table per effect size, rows by N, columns by test; mirrors the usual
// power-table layout with entries >= 0.8 flagged by the renderer.
std::vector<PowerTable> power_table(const DistributionPair& pair,
                                    const std::vector<TestId>& tests,
                                    const std::vector<double>& effect_sizes,
                                    const std::vector<std::size_t>& sample_sizes,
                                    std::size_t n_repetitions, double alpha,
                                    std::uint64_t base_seed,
                                    const ResamplingOptions& opts = {},
                                    std::size_t n_threads = 0);

}  // namespace statcmp
