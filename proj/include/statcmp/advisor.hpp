#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "statcmp/mc_engine.hpp"
#include "statcmp/stattests.hpp"

namespace statcmp {

struct LearningCurveSet {
    std::vector<std::int64_t> eval_steps;
    std::vector<std::vector<double>> runs;  // runs[r][step index]
    std::string label;

    void validate() const;
    // Per-step values across runs.
    std::vector<double> values_at(std::size_t step_idx) const;
};

struct CurveComparisonCriterion {
    std::size_t n_comparisons;   // N_c: last N_c evaluation steps compared
    std::size_t n_required;      // N_crit: rejections needed for a verdict
    double alpha = 0.05;
    TestId test = TestId::welch;

    double corrected_alpha() const;  // alpha * N_crit / N_c
};

double bonferroni(double alpha, std::size_t n_comparisons);

struct SampleSizeRecommendation {
    std::optional<std::size_t> n;  // nullopt: no ladder entry reaches target
    double achieved_power = 0.0;
    double se = 0.0;
    std::vector<std::pair<std::size_t, double>> ladder_powers;
};

// The candidate ladder mirrors the published table grid.
const std::vector<std::size_t>& sample_size_ladder();

// Smallest ladder N whose Monte Carlo power estimate reaches target_power.
SampleSizeRecommendation recommend_sample_size(
    double expected_epsilon, double target_power, TestId test,
    const DistributionPair& pair, double alpha, std::size_t n_repetitions,
    std::uint64_t base_seed, const ResamplingOptions& opts = {},
    std::size_t n_threads = 0);

enum class CurveVerdict { a_better, b_better, no_conclusion, inconsistent };

std::string verdict_name(CurveVerdict v);

struct StepComparison {
    std::int64_t step;
    TestOutcome outcome;
    double delta;  // mean(a) - mean(b) at this step
};

struct CurveComparisonReport {
    CurveVerdict verdict;
    std::size_t n_rejections;
    CurveComparisonCriterion criterion;
    std::vector<StepComparison> steps;
};

// Per-step tests at the FWER-corrected level over the last N_c shared
// steps; a verdict requires more than N_crit rejections, all of one sign.
CurveComparisonReport compare_learning_curves(const LearningCurveSet& a,
                                              const LearningCurveSet& b,
                                              const CurveComparisonCriterion& criterion,
                                              RngStream& rng,
                                              const ResamplingOptions& opts = {});

enum class BandKind { sd, se, interpercentile };
enum class CenterKind { mean, median };

struct BandSpec {
    BandKind kind = BandKind::interpercentile;
    double p_lo = 0.10;
    double p_hi = 0.90;
};

struct CurveSummaryRow {
    std::int64_t step;
    double center;
    double band_low;
    double band_high;
};

std::vector<CurveSummaryRow> describe_curves(const LearningCurveSet& set,
                                             BandSpec band, CenterKind center);

}  // namespace statcmp
