// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expected values and tolerances are pinned in code.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "statcmp/advisor.hpp"
#include "statcmp/mc_engine.hpp"

using namespace statcmp;

namespace {

int g_failures = 0;

void report(const std::string& criterion, bool ok, const std::string& detail = "") {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", criterion.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

DistributionPair make_pair(Family f1, Family f2, double sigma1 = 1.0,
                           double sigma2 = 1.0) {
    return DistributionPair{
        make_standardized(f1, {}, CenterMode::mean, sigma1, 0.0),
        make_standardized(f2, {}, CenterMode::mean, sigma2, 0.0),
        family_name(f1) + "/" + family_name(f2)};
}

Sample normal_sample(RngStream& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.next_normal();
    return Sample{std::move(v), ""};
}

void criterion_1_table1() {
    GridConfig config;
    config.pairs = {make_pair(Family::normal, Family::normal)};
    config.tests = {TestId::t_test, TestId::welch};
    config.effect_sizes = {0.5, 1.0, 2.0};
    config.sample_sizes = {5, 10, 20, 30, 100};
    config.n_repetitions = 10000;
    config.alpha = 0.05;
    config.base_seed = 20240601;
    const ResultsGrid grid = run_grid(config);

    struct Expect {
        std::size_t test, effect, size;
        double value;
    };
    // columns: test index {0: t-test, 1: welch}; effects {0.5, 1.0, 2.0};
    // sizes index into {5, 10, 20, 30, 100}
    const std::vector<Expect> cells = {
        {0, 0, 1, 0.179}, {0, 0, 2, 0.336}, {0, 0, 4, 0.943},
        {0, 1, 1, 0.560}, {0, 1, 2, 0.870}, {0, 1, 3, 0.970},
        {0, 2, 0, 0.788}, {0, 2, 1, 0.987},
        {1, 0, 1, 0.186}, {1, 0, 2, 0.340}, {1, 0, 4, 0.940},
        {1, 1, 1, 0.553}, {1, 1, 2, 0.862}, {1, 1, 3, 0.966},
        {1, 2, 0, 0.771}, {1, 2, 1, 0.988},
    };
    bool ok = true;
    std::string worst;
    for (const auto& c : cells) {
        const double got = grid.rate(0, c.test, c.effect, c.size);
        if (std::fabs(got - c.value) > 0.03) {
            ok = false;
            worst += " [" + std::to_string(c.value) + " got " + std::to_string(got) + "]";
        }
    }
    report("1. power-table reproduction (normal/normal, t-test and Welch, +/-0.03)", ok,
           worst);
}

void criterion_2_quantization() {
    GridConfig config;
    config.pairs = {make_pair(Family::normal, Family::normal),
                    make_pair(Family::lognormal, Family::lognormal),
                    make_pair(Family::bimodal, Family::bimodal),
                    make_pair(Family::lognormal, Family::normal)};
    config.tests = {TestId::ranked_t, TestId::mann_whitney};
    config.effect_sizes = {0.0};
    config.sample_sizes = {2};
    config.n_repetitions = 10000;
    config.base_seed = 2;
    const ResultsGrid grid = run_grid(config);
    bool ok = true;
    for (std::size_t ip = 0; ip < config.pairs.size(); ++ip)
        for (std::size_t it = 0; it < 2; ++it)
            if (grid.rate(ip, it, 0, 0) != 0.0) ok = false;
    report("2. rank-test rejection rate is exactly 0 at N=2 on every pair", ok);
}

void criterion_3_bootstrap() {
    GridConfig config;
    config.pairs = {make_pair(Family::normal, Family::normal)};
    config.tests = {TestId::bootstrap_ci};
    config.effect_sizes = {0.0};
    config.sample_sizes = {5, 100};
    config.n_repetitions = 10000;
    config.base_seed = 3;
    config.resampling.n_boot = 1000;
    const ResultsGrid grid = run_grid(config);
    const double at5 = grid.rate(0, 0, 0, 0);
    const double at100 = grid.rate(0, 0, 0, 1);
    report("3. bootstrap overconfidence: alpha* > 0.10 at N=5, <= 0.07 at N=100",
           at5 > 0.10 && at100 <= 0.07,
           "alpha*(5)=" + std::to_string(at5) + " alpha*(100)=" + std::to_string(at100));
}

void criterion_4_permutation() {
    GridConfig config;
    config.pairs = {make_pair(Family::normal, Family::normal)};
    config.tests = {TestId::permutation};
    config.effect_sizes = {0.0};
    config.sample_sizes = {3, 10};
    config.n_repetitions = 10000;
    config.base_seed = 4;
    config.resampling.n_perm = 1000;
    const ResultsGrid grid = run_grid(config);
    const double at3 = grid.rate(0, 0, 0, 0);
    const double at10 = grid.rate(0, 0, 0, 1);
    report("4. permutation overconfidence: alpha* > 0.08 at N=3, <= 0.07 at N=10",
           at3 > 0.08 && at10 <= 0.07,
           "alpha*(3)=" + std::to_string(at3) + " alpha*(10)=" + std::to_string(at10));
}

void criterion_5_skew_pathology() {
    const auto curve = fpr_curve(make_pair(Family::lognormal, Family::normal),
                                 TestId::mann_whitney, {5, 10, 20, 50, 100}, 10000,
                                 0.05, 5);
    bool ok = curve[2].alpha_star > 0.10;  // N = 20
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const double slack = 2.0 * (curve[i - 1].se + curve[i].se);
        if (curve[i].alpha_star < curve[i - 1].alpha_star - slack) ok = false;
    }
    std::string detail;
    for (const auto& p : curve)
        detail += "N=" + std::to_string(p.sample_size) + ":" +
                  std::to_string(p.alpha_star) + " ";
    report("5. Mann-Whitney skew pathology on lognormal-vs-normal grows with N", ok,
           detail);
}

void criterion_6_calibration() {
    GridConfig config;
    config.pairs = {make_pair(Family::normal, Family::normal)};
    config.tests = {TestId::t_test, TestId::welch};
    config.effect_sizes = {0.0};
    config.sample_sizes = {10, 30, 100};
    config.n_repetitions = 10000;
    config.base_seed = 6;
    const ResultsGrid grid = run_grid(config);
    bool ok = true;
    std::string detail;
    for (std::size_t it = 0; it < 2; ++it)
        for (std::size_t is = 0; is < 3; ++is) {
            const double r = grid.rate(0, it, 0, is);
            detail += std::to_string(r) + " ";
            if (std::fabs(r - 0.05) > 0.009) ok = false;
        }
    report("6. t-test and Welch calibrated on normal null (0.05 +/- 0.009)", ok, detail);
}

void criterion_7_advisor() {
    const DistributionPair pair = make_pair(Family::normal, Family::normal);
    const auto r1 = recommend_sample_size(1.0, 0.8, TestId::welch, pair, 0.05, 10000, 7);
    const auto r05 = recommend_sample_size(0.5, 0.8, TestId::welch, pair, 0.05, 10000, 7);
    const auto r2 = recommend_sample_size(2.0, 0.8, TestId::welch, pair, 0.05, 10000, 7);
    const bool ok = r1.n && *r1.n == 20 && r05.n && *r05.n == 100 && r2.n &&
                    (*r2.n == 5 || *r2.n == 10);
    std::string detail = "N(eps=1)=" + (r1.n ? std::to_string(*r1.n) : "none") +
                         " N(eps=0.5)=" + (r05.n ? std::to_string(*r05.n) : "none") +
                         " N(eps=2)=" + (r2.n ? std::to_string(*r2.n) : "none");
    report("7. advisor thresholds: eps=1 -> 20, eps=0.5 -> 100, eps=2 -> {5,10}", ok,
           detail);
}

void criterion_8_oracles() {
    RngStream rng(8, 0);
    bool perm_ok = true;
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 3 + rng.next_below(4);  // N1 = N2 in 3..6
        Sample x1 = normal_sample(rng, n);
        Sample x2 = normal_sample(rng, n);
        RngStream perm_rng(8, 100 + i);
        const double exact = *permutation_test(x1, x2, 0.05, 1000, perm_rng).p_value;
        RngStream samp_rng(8, 200 + i);
        const double sampled =
            *permutation_test(x1, x2, 0.05, 100000, samp_rng, 1).p_value;
        if (std::fabs(exact - sampled) > 0.01) perm_ok = false;
    }
    bool mw_ok = true;
    for (int i = 0; i < 50; ++i) {
        Sample x1 = normal_sample(rng, 5);
        Sample x2 = normal_sample(rng, 5);
        const double approx = *mann_whitney(x1, x2, 0.05).p_value;
        const double exact = mann_whitney_exact_p(x1, x2);
        if (std::fabs(approx - exact) > 0.05) mw_ok = false;
    }
    report("8. sampled permutation within 0.01 of exact; MW approximation within 0.05",
           perm_ok && mw_ok);
}

void criterion_9_numerics() {
    bool t_ok = true;
    const double dofs[] = {1, 2, 4, 7, 10, 15, 25, 50, 200, 1000};
    const double ts[] = {-5, -3.2, -1.7, -0.9, -0.2, 0.4, 1.1, 2.3, 3.6, 4.8};
    for (double dof : dofs)
        for (double t : ts)
            if (std::fabs(student_t_sf(t, dof) -
                          oracles::student_t_sf_quadrature(t, dof)) > 1e-9)
                t_ok = false;
    bool beta_ok = true;
    RngStream rng(9, 0);
    for (int i = 0; i < 200; ++i) {
        const double a = 0.5 + 20.0 * rng.next_double();
        const double b = 0.5 + 20.0 * rng.next_double();
        const double x = rng.next_double();
        const double lhs = regularized_incomplete_beta(a, b, x);
        const double rhs = 1.0 - regularized_incomplete_beta(b, a, 1.0 - x);
        if (std::fabs(lhs - rhs) > 1e-12) beta_ok = false;
    }
    report("9. student_t_sf matches quadrature to 1e-9; beta symmetry to 1e-12",
           t_ok && beta_ok);
}

void criterion_10_properties() {
    RngStream rng(10, 0);
    bool ok = true;
    // invariance properties over 100 randomized instances
    for (int i = 0; i < 100; ++i) {
        Sample x1 = normal_sample(rng, 6);
        Sample x2 = normal_sample(rng, 6);
        const double c = 7.0 * (rng.next_double() - 0.5);
        const double s = 0.2 + 4.0 * rng.next_double();
        Sample t1 = x1, t2 = x2, s1 = x1, s2 = x2, m1 = x1, m2 = x2;
        for (auto& v : t1.values) v += c;
        for (auto& v : t2.values) v += c;
        for (auto& v : s1.values) v *= s;
        for (auto& v : s2.values) v *= s;
        for (auto& v : m1.values) v = std::atan(v);
        for (auto& v : m2.values) v = std::atan(v);
        if (std::fabs(*t_test(x1, x2, 0.05).p_value - *t_test(t1, t2, 0.05).p_value) >
            1e-9)
            ok = false;
        if (std::fabs(*welch_test(x1, x2, 0.05).p_value -
                      *welch_test(s1, s2, 0.05).p_value) > 1e-9)
            ok = false;
        if (*mann_whitney(x1, x2, 0.05).p_value != *mann_whitney(m1, m2, 0.05).p_value)
            ok = false;
        if (*ranked_t_test(x1, x2, 0.05).p_value != *ranked_t_test(t1, t2, 0.05).p_value)
            ok = false;
    }
    // engine determinism across thread counts
    GridConfig config;
    config.pairs = {make_pair(Family::bimodal, Family::lognormal)};
    config.tests = {TestId::welch, TestId::mann_whitney};
    config.effect_sizes = {0.0, 0.5};
    config.sample_sizes = {5, 20};
    config.n_repetitions = 500;
    config.base_seed = 77;
    config.n_threads = 1;
    const ResultsGrid a = run_grid(config);
    config.n_threads = 3;
    const ResultsGrid b = run_grid(config);
    if (a.rejection_rate != b.rejection_rate) ok = false;
    // p-value uniformity under H0
    std::vector<double> ps;
    RngStream prng(10, 1);
    for (int i = 0; i < 10000; ++i) {
        Sample x1 = normal_sample(prng, 20);
        Sample x2 = normal_sample(prng, 20);
        ps.push_back(*t_test(x1, x2, 0.05).p_value);
    }
    std::sort(ps.begin(), ps.end());
    double sup = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i)
        sup = std::max(sup, std::fabs(double(i + 1) / ps.size() - ps[i]));
    if (sup > 0.02) ok = false;
    report("10. property suites: invariances, determinism, p-value uniformity", ok);
}

}  // namespace

int main() {
    criterion_9_numerics();
    criterion_8_oracles();
    criterion_2_quantization();
    criterion_10_properties();
    criterion_6_calibration();
    criterion_4_permutation();
    criterion_5_skew_pathology();
    criterion_1_table1();
    criterion_7_advisor();
    criterion_3_bootstrap();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
