#include "statcmp/advisor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace statcmp {

void LearningCurveSet::validate() const {
    if (eval_steps.empty()) throw std::invalid_argument("learning curves: no evaluation steps");
    if (runs.empty()) throw std::invalid_argument("learning curves: no runs");
    for (std::size_t r = 0; r < runs.size(); ++r) {
        if (runs[r].size() != eval_steps.size())
            throw std::invalid_argument("learning curves: run " + std::to_string(r) +
                                        " length does not match eval_steps");
        for (double v : runs[r])
            if (!std::isfinite(v))
                throw std::invalid_argument("learning curves: non-finite value in run " +
                                            std::to_string(r));
    }
}

std::vector<double> LearningCurveSet::values_at(std::size_t step_idx) const {
    std::vector<double> v;
    v.reserve(runs.size());
    for (const auto& run : runs) v.push_back(run[step_idx]);
    return v;
}

double CurveComparisonCriterion::corrected_alpha() const {
    if (n_comparisons == 0 || n_required == 0 || n_required > n_comparisons)
        throw std::invalid_argument("curve criterion: need 1 <= N_crit <= N_c");
    return alpha * static_cast<double>(n_required) / static_cast<double>(n_comparisons);
}

double bonferroni(double alpha, std::size_t n_comparisons) {
    if (n_comparisons == 0) throw std::domain_error("bonferroni: n_comparisons must be >= 1");
    return alpha / static_cast<double>(n_comparisons);
}

const std::vector<std::size_t>& sample_size_ladder() {
    static const std::vector<std::size_t> ladder = {2, 3, 5, 10, 15, 20, 30, 40, 50, 100};
    return ladder;
}

SampleSizeRecommendation recommend_sample_size(
    double expected_epsilon, double target_power, TestId test,
    const DistributionPair& pair, double alpha, std::size_t n_repetitions,
    std::uint64_t base_seed, const ResamplingOptions& opts, std::size_t n_threads) {
    if (!(expected_epsilon > 0.0))
        throw std::domain_error("recommend_sample_size: epsilon must be positive");
    if (!(target_power > 0.0 && target_power < 1.0))
        throw std::domain_error("recommend_sample_size: target power must be in (0, 1)");

    const auto tables = power_table(pair, {test}, {expected_epsilon},
                                    sample_size_ladder(), n_repetitions, alpha,
                                    base_seed, opts, n_threads);
    SampleSizeRecommendation rec;
    for (const PowerRow& row : tables[0].rows) {
        rec.ladder_powers.emplace_back(row.sample_size, row.power[0]);
        if (!rec.n && row.power[0] >= target_power) {
            rec.n = row.sample_size;
            rec.achieved_power = row.power[0];
            rec.se = row.se[0];
        }
    }
    return rec;
}

std::string verdict_name(CurveVerdict v) {
    switch (v) {
        case CurveVerdict::a_better: return "a better than b";
        case CurveVerdict::b_better: return "b better than a";
        case CurveVerdict::no_conclusion: return "no conclusion";
        case CurveVerdict::inconsistent: return "inconsistent";
    }
    return "?";
}

CurveComparisonReport compare_learning_curves(const LearningCurveSet& a,
                                              const LearningCurveSet& b,
                                              const CurveComparisonCriterion& criterion,
                                              RngStream& rng,
                                              const ResamplingOptions& opts) {
    a.validate();
    b.validate();
    const double corrected = criterion.corrected_alpha();

    if (a.eval_steps.size() < criterion.n_comparisons ||
        b.eval_steps.size() < criterion.n_comparisons)
        throw std::invalid_argument("curve comparison: fewer evaluation steps than N_c");

    // compare the common suffix of length N_c; its steps must agree
    const std::size_t off_a = a.eval_steps.size() - criterion.n_comparisons;
    const std::size_t off_b = b.eval_steps.size() - criterion.n_comparisons;
    std::vector<std::int64_t> mismatched;
    for (std::size_t i = 0; i < criterion.n_comparisons; ++i)
        if (a.eval_steps[off_a + i] != b.eval_steps[off_b + i])
            mismatched.push_back(a.eval_steps[off_a + i]);
    if (!mismatched.empty()) {
        std::ostringstream msg;
        msg << "curve comparison: evaluation steps not aligned at:";
        for (auto s : mismatched) msg << ' ' << s;
        throw std::invalid_argument(msg.str());
    }

    CurveComparisonReport report;
    report.criterion = criterion;
    report.n_rejections = 0;
    std::vector<double> reject_deltas;
    for (std::size_t i = 0; i < criterion.n_comparisons; ++i) {
        Sample sa{a.values_at(off_a + i), a.label};
        Sample sb{b.values_at(off_b + i), b.label};
        if (sa.values.size() < 2 || sb.values.size() < 2)
            throw std::invalid_argument("curve comparison: every step needs >= 2 runs per side");
        StepComparison step;
        step.step = a.eval_steps[off_a + i];
        step.outcome = run_test(criterion.test, sa, sb, corrected, opts, &rng);
        step.delta = sa.mean() - sb.mean();
        if (step.outcome.reject) {
            ++report.n_rejections;
            reject_deltas.push_back(step.delta);
        }
        report.steps.push_back(std::move(step));
    }

    if (report.n_rejections <= criterion.n_required) {
        report.verdict = CurveVerdict::no_conclusion;
        return report;
    }
    const bool any_pos = std::any_of(reject_deltas.begin(), reject_deltas.end(),
                                     [](double d) { return d > 0.0; });
    const bool any_neg = std::any_of(reject_deltas.begin(), reject_deltas.end(),
                                     [](double d) { return d < 0.0; });
    if (any_pos && any_neg) {
        report.verdict = CurveVerdict::inconsistent;
        return report;
    }
    std::sort(reject_deltas.begin(), reject_deltas.end());
    const double med = reject_deltas[reject_deltas.size() / 2];
    report.verdict = med > 0.0 ? CurveVerdict::a_better : CurveVerdict::b_better;
    return report;
}

std::vector<CurveSummaryRow> describe_curves(const LearningCurveSet& set,
                                             BandSpec band, CenterKind center) {
    set.validate();
    if (band.kind == BandKind::interpercentile &&
        !(band.p_lo >= 0.0 && band.p_lo <= band.p_hi && band.p_hi <= 1.0))
        throw std::invalid_argument("describe_curves: percentiles must satisfy 0 <= lo <= hi <= 1");

    std::vector<CurveSummaryRow> rows;
    rows.reserve(set.eval_steps.size());
    for (std::size_t i = 0; i < set.eval_steps.size(); ++i) {
        Sample s{set.values_at(i), set.label};
        CurveSummaryRow row;
        row.step = set.eval_steps[i];
        row.center = (center == CenterKind::mean) ? s.mean() : s.median();
        switch (band.kind) {
            case BandKind::sd: {
                const double sd = s.values.size() > 1 ? s.sd() : 0.0;
                row.band_low = row.center - sd;
                row.band_high = row.center + sd;
                break;
            }
            case BandKind::se: {
                const double se = s.values.size() > 1
                                      ? s.sd() / std::sqrt(static_cast<double>(s.values.size()))
                                      : 0.0;
                row.band_low = row.center - se;
                row.band_high = row.center + se;
                break;
            }
            case BandKind::interpercentile:
                row.band_low = interpolated_percentile(s.values, band.p_lo);
                row.band_high = interpolated_percentile(s.values, band.p_hi);
                break;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace statcmp
