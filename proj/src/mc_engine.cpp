#include "statcmp/mc_engine.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace statcmp {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Stream id from the cell's semantic coordinates, not its position in the
// grid, so removing other cells leaves this cell's draws untouched.
std::uint64_t cell_stream_id(std::size_t pair_idx, TestId test, double effect,
                             std::size_t sample_size, std::size_t rep) {
    std::uint64_t h = mix64(pair_idx);
    h = mix64(h ^ mix64(static_cast<std::uint64_t>(test) + 0x100));
    h = mix64(h ^ mix64(std::bit_cast<std::uint64_t>(effect)));
    h = mix64(h ^ mix64(sample_size));
    return mix64(h ^ mix64(rep));
}

struct Cell {
    std::size_t pair_idx, test_idx, effect_idx, size_idx;
    DistributionSpec spec1;
    DistributionSpec spec2;  // re-centered and shifted
    TestId test;
    double effect;
    std::size_t sample_size;
};

}  // namespace

void GridConfig::validate() const {
    std::vector<std::string> problems;
    if (pairs.empty()) problems.push_back("no distribution pairs given");
    if (tests.empty()) problems.push_back("no tests given");
    if (effect_sizes.empty()) problems.push_back("no effect sizes given");
    for (double e : effect_sizes)
        if (!(e >= 0.0) || !std::isfinite(e))
            problems.push_back("effect size must be a finite nonnegative real");
    if (sample_sizes.empty()) problems.push_back("no sample sizes given");
    for (std::size_t n : sample_sizes)
        if (n < 2) problems.push_back("sample size must be >= 2 (got " + std::to_string(n) + ")");
    if (n_repetitions == 0) problems.push_back("n_repetitions must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) problems.push_back("alpha must be in (0, 1)");
    if (resampling.n_boot < 100) problems.push_back("n_boot must be >= 100");
    if (resampling.n_perm < 100) problems.push_back("n_perm must be >= 100");
    if (!problems.empty()) {
        std::ostringstream msg;
        msg << "invalid grid config:";
        for (const auto& p : problems) msg << "\n  - " << p;
        throw std::invalid_argument(msg.str());
    }
}

ResultsGrid run_grid(const GridConfig& config, ProgressSink progress) {
    config.validate();

    const std::size_t np = config.pairs.size();
    const std::size_t nt = config.tests.size();
    const std::size_t ne = config.effect_sizes.size();
    const std::size_t ns = config.sample_sizes.size();

    std::vector<Cell> cells;
    cells.reserve(np * nt * ne * ns);
    for (std::size_t ip = 0; ip < np; ++ip) {
        for (std::size_t it = 0; it < nt; ++it) {
            const TestId test = config.tests[it];
            const CenterMode mode = test_compares(test) == Compares::medians
                                        ? CenterMode::median
                                        : CenterMode::mean;
            const DistributionSpec s1 = config.pairs[ip].first.with_center_mode(mode);
            const DistributionSpec s2 = config.pairs[ip].second.with_center_mode(mode);
            const double sigma_pool =
                std::sqrt(0.5 * (s1.sigma() * s1.sigma() + s2.sigma() * s2.sigma()));
            for (std::size_t ie = 0; ie < ne; ++ie) {
                const double effect = config.effect_sizes[ie];
                const DistributionSpec s2_shifted = s2.shifted(effect * sigma_pool);
                for (std::size_t is = 0; is < ns; ++is) {
                    cells.push_back(Cell{ip, it, ie, is, s1, s2_shifted, test, effect,
                                         config.sample_sizes[is]});
                }
            }
        }
    }

    std::vector<std::uint64_t> reject_counts(cells.size(), 0);
    std::atomic<std::size_t> next_task{0};
    std::atomic<std::size_t> cells_done{0};

    // tasks are (cell, repetition chunk); counts are integers so the
    // reduction is order-independent
    constexpr std::size_t kChunk = 128;
    const std::size_t chunks_per_cell = (config.n_repetitions + kChunk - 1) / kChunk;
    const std::size_t total_tasks = cells.size() * chunks_per_cell;
    std::vector<std::atomic<std::uint64_t>> partial(cells.size());
    for (auto& p : partial) p.store(0);
    std::vector<std::atomic<std::size_t>> chunks_left(cells.size());
    for (auto& c : chunks_left) c.store(chunks_per_cell);

    std::size_t n_threads = config.n_threads;
    if (n_threads == 0) {
        n_threads = std::thread::hardware_concurrency();
        if (n_threads == 0) n_threads = 1;
    }

    auto worker = [&]() {
        while (true) {
            const std::size_t task = next_task.fetch_add(1);
            if (task >= total_tasks) return;
            const std::size_t ci = task / chunks_per_cell;
            const std::size_t chunk = task % chunks_per_cell;
            const Cell& cell = cells[ci];
            const std::size_t rep_begin = chunk * kChunk;
            const std::size_t rep_end =
                std::min(rep_begin + kChunk, config.n_repetitions);
            std::uint64_t rejects = 0;
            for (std::size_t rep = rep_begin; rep < rep_end; ++rep) {
                RngStream rng(config.base_seed,
                              cell_stream_id(cell.pair_idx, cell.test, cell.effect,
                                             cell.sample_size, rep));
                const Sample x1 = cell.spec1.sample(cell.sample_size, rng);
                const Sample x2 = cell.spec2.sample(cell.sample_size, rng);
                const TestOutcome out = run_test(cell.test, x1, x2, config.alpha,
                                                 config.resampling, &rng);
                if (out.reject) ++rejects;
            }
            partial[ci].fetch_add(rejects);
            if (chunks_left[ci].fetch_sub(1) == 1) {
                const std::size_t done = cells_done.fetch_add(1) + 1;
                if (progress) progress(done, cells.size());
            }
        }
    };

    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    ResultsGrid grid;
    grid.config = config;
    grid.rejection_rate.assign(
        np, std::vector<std::vector<std::vector<double>>>(
                nt, std::vector<std::vector<double>>(ne, std::vector<double>(ns, 0.0))));
    grid.standard_error = grid.rejection_rate;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const Cell& cell = cells[ci];
        const double nr = static_cast<double>(config.n_repetitions);
        const double r = static_cast<double>(partial[ci].load()) / nr;
        grid.rejection_rate[cell.pair_idx][cell.test_idx][cell.effect_idx][cell.size_idx] = r;
        grid.standard_error[cell.pair_idx][cell.test_idx][cell.effect_idx][cell.size_idx] =
            std::sqrt(r * (1.0 - r) / nr);
    }
    return grid;
}

std::vector<FprPoint> fpr_curve(const DistributionPair& pair, TestId test,
                                const std::vector<std::size_t>& sample_sizes,
                                std::size_t n_repetitions, double alpha,
                                std::uint64_t base_seed,
                                const ResamplingOptions& opts,
                                std::size_t n_threads) {
    GridConfig config;
    config.pairs = {pair};
    config.tests = {test};
    config.effect_sizes = {0.0};
    config.sample_sizes = sample_sizes;
    config.n_repetitions = n_repetitions;
    config.alpha = alpha;
    config.base_seed = base_seed;
    config.resampling = opts;
    config.n_threads = n_threads;
    const ResultsGrid grid = run_grid(config);
    std::vector<FprPoint> points;
    points.reserve(sample_sizes.size());
    for (std::size_t i = 0; i < sample_sizes.size(); ++i)
        points.push_back({sample_sizes[i], grid.rate(0, 0, 0, i), grid.se(0, 0, 0, i)});
    return points;
}

std::vector<PowerTable> power_table(const DistributionPair& pair,
                                    const std::vector<TestId>& tests,
                                    const std::vector<double>& effect_sizes,
                                    const std::vector<std::size_t>& sample_sizes,
                                    std::size_t n_repetitions, double alpha,
                                    std::uint64_t base_seed,
                                    const ResamplingOptions& opts,
                                    std::size_t n_threads) {
    for (double e : effect_sizes)
        if (!(e > 0.0))
            throw std::invalid_argument("power_table: effect sizes must be positive");
    GridConfig config;
    config.pairs = {pair};
    config.tests = tests;
    config.effect_sizes = effect_sizes;
    config.sample_sizes = sample_sizes;
    config.n_repetitions = n_repetitions;
    config.alpha = alpha;
    config.base_seed = base_seed;
    config.resampling = opts;
    config.n_threads = n_threads;
    const ResultsGrid grid = run_grid(config);

    std::vector<PowerTable> tables;
    tables.reserve(effect_sizes.size());
    for (std::size_t ie = 0; ie < effect_sizes.size(); ++ie) {
        PowerTable table;
        table.tests = tests;
        table.effect_size = effect_sizes[ie];
        for (std::size_t is = 0; is < sample_sizes.size(); ++is) {
            PowerRow row;
            row.sample_size = sample_sizes[is];
            for (std::size_t it = 0; it < tests.size(); ++it) {
                row.power.push_back(grid.rate(0, it, ie, is));
                row.se.push_back(grid.se(0, it, ie, is));
            }
            table.rows.push_back(std::move(row));
        }
        tables.push_back(std::move(table));
    }
    return tables;
}

}  // namespace statcmp
