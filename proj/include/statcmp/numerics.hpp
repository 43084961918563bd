#pragma once

#include <cstdint>
#include <stdexcept>

namespace statcmp {

// Counter-based deterministic random stream. Each (seed, stream_id) pair
// yields an independent sequence; draws depend only on (seed, stream_id,
// counter), so grid cells can be evaluated in any order on any thread.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64();

    // Uniform on [0, 1).
    double next_double();

    // Uniform on (0, 1].
    double next_double_open_zero();

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n);

    // Standard normal variate (Box-Muller, second value cached).
    double next_normal();

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t key1_;
    std::uint64_t key2_;
    std::uint64_t counter_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

// Standard normal CDF, absolute error below 1e-12.
double normal_cdf(double x);

// Regularized incomplete beta function I_x(a, b).
// Continued fraction with the symmetry switch at x = (a+1)/(a+b+2).
double regularized_incomplete_beta(double a, double b, double x);

// Survival function P(T > t) of Student's t with `dof` degrees of freedom.
double student_t_sf(double t, double dof);

}  // namespace statcmp
