#include "statcmp/stattests.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace statcmp {

std::string test_name(TestId id) {
    switch (id) {
        case TestId::t_test: return "t_test";
        case TestId::welch: return "welch";
        case TestId::mann_whitney: return "mann_whitney";
        case TestId::ranked_t: return "ranked_t";
        case TestId::bootstrap_ci: return "bootstrap_ci";
        case TestId::permutation: return "permutation";
    }
    return "?";
}

TestId test_from_name(const std::string& name) {
    if (name == "t_test" || name == "t-test") return TestId::t_test;
    if (name == "welch") return TestId::welch;
    if (name == "mann_whitney" || name == "mann-whitney") return TestId::mann_whitney;
    if (name == "ranked_t" || name == "ranked-t") return TestId::ranked_t;
    if (name == "bootstrap_ci" || name == "bootstrap") return TestId::bootstrap_ci;
    if (name == "permutation") return TestId::permutation;
    throw std::invalid_argument("unknown test: " + name);
}

Compares test_compares(TestId id) {
    return (id == TestId::mann_whitney || id == TestId::ranked_t) ? Compares::medians
                                                                  : Compares::means;
}

bool test_needs_rng(TestId id) {
    return id == TestId::bootstrap_ci || id == TestId::permutation;
}

namespace {

void require_min_size(const Sample& x1, const Sample& x2, std::size_t n) {
    if (x1.values.size() < n || x2.values.size() < n)
        throw std::domain_error("samples must have at least " + std::to_string(n) +
                                " values each");
}

TestOutcome from_t_statistic(TestId id, double t, double dof, double alpha) {
    TestOutcome out;
    out.test_id = id;
    out.statistic = t;
    out.alpha = alpha;
    out.compares = test_compares(id);
    out.p_value = std::min(1.0, 2.0 * student_t_sf(std::fabs(t), dof));
    out.reject = *out.p_value < alpha;
    return out;
}

// Conventions for zero-variance inputs: identical constants compare equal
// (p = 1), separated constants differ with certainty (p = 0).
std::optional<TestOutcome> degenerate_t_case(TestId id, const Sample& x1,
                                             const Sample& x2, double alpha) {
    if (x1.variance() > 0.0 || x2.variance() > 0.0) return std::nullopt;
    TestOutcome out;
    out.test_id = id;
    out.alpha = alpha;
    out.compares = test_compares(id);
    const bool equal = x1.mean() == x2.mean();
    out.statistic = 0.0;
    out.p_value = equal ? 1.0 : 0.0;
    out.reject = !equal && *out.p_value < alpha;
    return out;
}

}  // namespace

TestOutcome t_test(const Sample& x1, const Sample& x2, double alpha) {
    require_min_size(x1, x2, 2);
    if (auto deg = degenerate_t_case(TestId::t_test, x1, x2, alpha)) return *deg;
    const double n1 = static_cast<double>(x1.values.size());
    const double n2 = static_cast<double>(x2.values.size());
    const double sp2 = ((n1 - 1.0) * x1.variance() + (n2 - 1.0) * x2.variance()) /
                       (n1 + n2 - 2.0);
    const double t = (x1.mean() - x2.mean()) / std::sqrt(sp2 * (1.0 / n1 + 1.0 / n2));
    return from_t_statistic(TestId::t_test, t, n1 + n2 - 2.0, alpha);
}

TestOutcome welch_test(const Sample& x1, const Sample& x2, double alpha) {
    require_min_size(x1, x2, 2);
    if (auto deg = degenerate_t_case(TestId::welch, x1, x2, alpha)) return *deg;
    const double n1 = static_cast<double>(x1.values.size());
    const double n2 = static_cast<double>(x2.values.size());
    const double a = x1.variance() / n1;
    const double b = x2.variance() / n2;
    const double t = (x1.mean() - x2.mean()) / std::sqrt(a + b);
    const double dof = (a + b) * (a + b) /
                       (a * a / (n1 - 1.0) + b * b / (n2 - 1.0));
    return from_t_statistic(TestId::welch, t, dof, alpha);
}

std::pair<std::vector<double>, std::vector<double>> joint_midranks(
    const std::vector<double>& v1, const std::vector<double>& v2) {
    const std::size_t n1 = v1.size();
    const std::size_t n = n1 + v2.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto value_at = [&](std::size_t i) { return i < n1 ? v1[i] : v2[i - n1]; };
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return value_at(a) < value_at(b); });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && value_at(order[j + 1]) == value_at(order[i])) ++j;
        const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = midrank;
        i = j + 1;
    }
    std::vector<double> r1(ranks.begin(), ranks.begin() + static_cast<long>(n1));
    std::vector<double> r2(ranks.begin() + static_cast<long>(n1), ranks.end());
    return {std::move(r1), std::move(r2)};
}

TestOutcome mann_whitney(const Sample& x1, const Sample& x2, double alpha) {
    if (x1.values.empty() || x2.values.empty())
        throw std::domain_error("mann_whitney: empty sample");
    const double n1 = static_cast<double>(x1.values.size());
    const double n2 = static_cast<double>(x2.values.size());
    const double n = n1 + n2;
    auto [r1, r2] = joint_midranks(x1.values, x2.values);
    const double rank_sum1 = std::accumulate(r1.begin(), r1.end(), 0.0);
    const double u = rank_sum1 - n1 * (n1 + 1.0) / 2.0;

    // tie correction over pooled value multiplicities
    std::vector<double> pooled = x1.values;
    pooled.insert(pooled.end(), x2.values.begin(), x2.values.end());
    std::sort(pooled.begin(), pooled.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < pooled.size();) {
        std::size_t j = i;
        while (j + 1 < pooled.size() && pooled[j + 1] == pooled[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    const double var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));

    TestOutcome out;
    out.test_id = TestId::mann_whitney;
    out.statistic = u;
    out.alpha = alpha;
    out.compares = Compares::medians;
    if (var <= 0.0) {
        out.p_value = 1.0;  // all 2N values identical
    } else {
        const double z = std::max(0.0, std::fabs(u - n1 * n2 / 2.0) - 0.5) / std::sqrt(var);
        out.p_value = std::clamp(2.0 * (1.0 - normal_cdf(z)), 0.0, 1.0);
    }
    out.reject = *out.p_value < alpha;
    return out;
}

namespace {

// Visits every subset of size k out of {0..n-1} via index combinations.
template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& body) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        body(idx);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) break;
            if (i == 0) return;
        }
        if (idx[i] == i + n - k) return;
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

double binomial_coefficient_capped(std::size_t n, std::size_t k, double cap) {
    double c = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        c *= static_cast<double>(n - k + i) / static_cast<double>(i);
        if (c > cap) return cap + 1.0;
    }
    return c;
}

}  // namespace

double mann_whitney_exact_p(const Sample& x1, const Sample& x2) {
    const std::size_t n1 = x1.values.size();
    const std::size_t n2 = x2.values.size();
    const std::size_t n = n1 + n2;
    if (n1 == 0 || n2 == 0) throw std::domain_error("mann_whitney_exact_p: empty sample");
    if (binomial_coefficient_capped(n, n1, 2e7) > 2e7)
        throw std::domain_error("mann_whitney_exact_p: sample too large to enumerate");

    auto [r1, r2] = joint_midranks(x1.values, x2.values);
    std::vector<double> ranks = r1;
    ranks.insert(ranks.end(), r2.begin(), r2.end());
    const double rank_sum1 = std::accumulate(r1.begin(), r1.end(), 0.0);
    const double u_obs = rank_sum1 - static_cast<double>(n1) * (n1 + 1.0) / 2.0;
    const double center = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;
    const double dev_obs = std::fabs(u_obs - center) - 1e-9;

    std::uint64_t total = 0, extreme = 0;
    for_each_combination(n, n1, [&](const std::vector<std::size_t>& idx) {
        double rs = 0.0;
        for (std::size_t i : idx) rs += ranks[i];
        const double u = rs - static_cast<double>(n1) * (n1 + 1.0) / 2.0;
        if (std::fabs(u - center) >= dev_obs) ++extreme;
        ++total;
    });
    return static_cast<double>(extreme) / static_cast<double>(total);
}

TestOutcome ranked_t_test(const Sample& x1, const Sample& x2, double alpha) {
    require_min_size(x1, x2, 2);
    auto [r1, r2] = joint_midranks(x1.values, x2.values);
    Sample s1{std::move(r1), x1.label};
    Sample s2{std::move(r2), x2.label};
    TestOutcome out = t_test(s1, s2, alpha);
    out.test_id = TestId::ranked_t;
    out.compares = Compares::medians;
    return out;
}

double interpolated_percentile(std::vector<double> values, double q) {
    if (values.empty()) throw std::domain_error("percentile of empty collection");
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("percentile q outside [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

TestOutcome bootstrap_ci_test(const Sample& x1, const Sample& x2, double alpha,
                              std::size_t n_boot, RngStream& rng) {
    require_min_size(x1, x2, 2);
    if (n_boot < 100) throw std::invalid_argument("bootstrap: n_boot must be >= 100");
    const std::size_t n1 = x1.values.size();
    const std::size_t n2 = x2.values.size();
    std::vector<double> deltas;
    deltas.reserve(n_boot);
    for (std::size_t b = 0; b < n_boot; ++b) {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < n1; ++i) s1 += x1.values[rng.next_below(n1)];
        for (std::size_t i = 0; i < n2; ++i) s2 += x2.values[rng.next_below(n2)];
        deltas.push_back(s1 / static_cast<double>(n1) - s2 / static_cast<double>(n2));
    }
    TestOutcome out;
    out.test_id = TestId::bootstrap_ci;
    out.alpha = alpha;
    out.compares = Compares::means;
    out.ci_low = interpolated_percentile(deltas, alpha / 2.0);
    out.ci_high = interpolated_percentile(deltas, 1.0 - alpha / 2.0);
    out.statistic = x1.mean() - x2.mean();
    out.reject = (0.0 < *out.ci_low) || (0.0 > *out.ci_high);
    return out;
}

TestOutcome permutation_test(const Sample& x1, const Sample& x2, double alpha,
                             std::size_t n_perm, RngStream& rng,
                             std::uint64_t exact_cap) {
    require_min_size(x1, x2, 2);
    const std::size_t n1 = x1.values.size();
    const std::size_t n2 = x2.values.size();
    std::vector<double> pooled = x1.values;
    pooled.insert(pooled.end(), x2.values.begin(), x2.values.end());
    const double total = std::accumulate(pooled.begin(), pooled.end(), 0.0);
    const double d_obs = std::fabs(x1.mean() - x2.mean());
    // H0 is rejected when the share of |delta| falling below the observed
    // difference exceeds 1 - alpha, so the count is of strictly larger
    // relabeled differences. The tolerance keeps the observed split and its
    // mirror (identical |delta| up to rounding) out of the count.
    const double tol = 1e-12 * (1.0 + d_obs);
    auto delta_for_sum1 = [&](double sum1) {
        return sum1 / static_cast<double>(n1) -
               (total - sum1) / static_cast<double>(n2);
    };

    TestOutcome out;
    out.test_id = TestId::permutation;
    out.alpha = alpha;
    out.compares = Compares::means;
    out.statistic = x1.mean() - x2.mean();

    if (d_obs == 0.0) {
        // a zero observed difference is never evidence against H0
        out.p_value = 1.0;
        out.reject = false;
        return out;
    }

    const double n_splits =
        binomial_coefficient_capped(n1 + n2, n1, static_cast<double>(exact_cap));
    if (n_splits <= static_cast<double>(exact_cap)) {
        std::uint64_t extreme = 0, count = 0;
        for_each_combination(n1 + n2, n1, [&](const std::vector<std::size_t>& idx) {
            double sum1 = 0.0;
            for (std::size_t i : idx) sum1 += pooled[i];
            if (std::fabs(delta_for_sum1(sum1)) > d_obs + tol) ++extreme;
            ++count;
        });
        out.p_value = static_cast<double>(extreme) / static_cast<double>(count);
    } else {
        if (n_perm < 100) throw std::invalid_argument("permutation: n_perm must be >= 100");
        std::uint64_t extreme = 0;
        std::vector<double> work = pooled;
        for (std::size_t p = 0; p < n_perm; ++p) {
            // partial Fisher-Yates: first n1 entries become the relabeled x1
            for (std::size_t i = 0; i < n1; ++i) {
                const std::size_t j =
                    i + static_cast<std::size_t>(rng.next_below(work.size() - i));
                std::swap(work[i], work[j]);
            }
            double sum1 = 0.0;
            for (std::size_t i = 0; i < n1; ++i) sum1 += work[i];
            if (std::fabs(delta_for_sum1(sum1)) > d_obs + tol) ++extreme;
        }
        out.p_value = static_cast<double>(1 + extreme) / static_cast<double>(n_perm + 1);
    }
    out.reject = *out.p_value < alpha;
    return out;
}

TestOutcome run_test(TestId id, const Sample& x1, const Sample& x2, double alpha,
                     const ResamplingOptions& opts, RngStream* rng) {
    switch (id) {
        case TestId::t_test: return t_test(x1, x2, alpha);
        case TestId::welch: return welch_test(x1, x2, alpha);
        case TestId::mann_whitney: return mann_whitney(x1, x2, alpha);
        case TestId::ranked_t: return ranked_t_test(x1, x2, alpha);
        case TestId::bootstrap_ci:
            if (!rng) throw std::invalid_argument("bootstrap requires an RngStream");
            return bootstrap_ci_test(x1, x2, alpha, opts.n_boot, *rng);
        case TestId::permutation:
            if (!rng) throw std::invalid_argument("permutation requires an RngStream");
            return permutation_test(x1, x2, alpha, opts.n_perm, *rng,
                                    opts.exact_enumeration_cap);
    }
    throw std::logic_error("unreachable");
}

EffectEstimate effect_estimate(const Sample& x1, const Sample& x2) {
    require_min_size(x1, x2, 2);
    const double v1 = x1.variance();
    const double v2 = x2.variance();
    const double sigma_pool = std::sqrt(0.5 * (v1 + v2));
    if (!(sigma_pool > 0.0))
        throw std::domain_error("effect_estimate: pooled standard deviation is zero");
    EffectEstimate e;
    e.delta_mean = x1.mean() - x2.mean();
    e.delta_median = x1.median() - x2.median();
    e.sigma_pool = sigma_pool;
    e.epsilon_mean = std::fabs(e.delta_mean) / sigma_pool;
    e.epsilon_median = std::fabs(e.delta_median) / sigma_pool;
    return e;
}

}  // namespace statcmp
