#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "statcmp/distributions.hpp"
#include "statcmp/numerics.hpp"

namespace statcmp {

enum class TestId { t_test, welch, mann_whitney, ranked_t, bootstrap_ci, permutation };
enum class Compares { means, medians };

std::string test_name(TestId id);
TestId test_from_name(const std::string& name);

// medians for the rank-based tests, means otherwise
Compares test_compares(TestId id);
bool test_needs_rng(TestId id);

struct TestOutcome {
    TestId test_id;
    double statistic = 0.0;          // U for Mann-Whitney, t otherwise
    std::optional<double> p_value;   // absent for bootstrap_ci
    std::optional<double> ci_low;    // bootstrap only
    std::optional<double> ci_high;
    bool reject = false;
    double alpha = 0.05;
    Compares compares = Compares::means;
};

struct EffectEstimate {
    double delta_mean;
    double delta_median;
    double sigma_pool;
    double epsilon_mean;
    double epsilon_median;
};

// Resampling configuration for the bootstrap and permutation tests.
struct ResamplingOptions {
    std::size_t n_boot = 1000;
    std::size_t n_perm = 1000;
    // Permutation switches to exact enumeration when C(N1+N2, N1) fits.
    std::uint64_t exact_enumeration_cap = 100000;
};

// Student's t-test assuming equal variances.
TestOutcome t_test(const Sample& x1, const Sample& x2, double alpha);

// Welch's t-test (unequal variances, Welch-Satterthwaite dof).
TestOutcome welch_test(const Sample& x1, const Sample& x2, double alpha);

// Mann-Whitney U with midranks, tie-corrected normal approximation and
// 0.5 continuity correction.
TestOutcome mann_whitney(const Sample& x1, const Sample& x2, double alpha);

// Exact two-sided Mann-Whitney p by enumerating all label splits.
// Oracle-grade reference for small samples.
double mann_whitney_exact_p(const Sample& x1, const Sample& x2);

// Joint midranking followed by the equal-variance t-test on the ranks.
TestOutcome ranked_t_test(const Sample& x1, const Sample& x2, double alpha);

// Percentile bootstrap CI on the mean difference; rejects when 0 is outside.
TestOutcome bootstrap_ci_test(const Sample& x1, const Sample& x2, double alpha,
                              std::size_t n_boot, RngStream& rng);

// Permutation test on the mean difference. Exact enumeration below the cap,
// otherwise sampled with add-one smoothing.
TestOutcome permutation_test(const Sample& x1, const Sample& x2, double alpha,
                             std::size_t n_perm, RngStream& rng,
                             std::uint64_t exact_cap = 100000);

// Dispatch by id; rng may be null for tests that do not resample.
TestOutcome run_test(TestId id, const Sample& x1, const Sample& x2, double alpha,
                     const ResamplingOptions& opts, RngStream* rng);

EffectEstimate effect_estimate(const Sample& x1, const Sample& x2);

// Joint midranks of the pooled samples, split back in order.
std::pair<std::vector<double>, std::vector<double>> joint_midranks(
    const std::vector<double>& v1, const std::vector<double>& v2);

// Percentile by linear interpolation between order statistics
// (inclusive endpoints). q in [0, 1].
double interpolated_percentile(std::vector<double> values, double q);

}  // namespace statcmp
