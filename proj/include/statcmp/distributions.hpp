#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "statcmp/numerics.hpp"

namespace statcmp {

enum class Family { normal, lognormal, bimodal, empirical };
enum class CenterMode { mean, median };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Family-specific shape parameters. Only the field matching the family is
// read; the others are ignored.
struct Shape {
    // lognormal: sigma of the underlying normal. Default 1 gives the
    // visibly skewed density used throughout.
    double lognormal_sigma = 1.0;
    // bimodal: modes at +-delta_fraction before scaling, component sd
    // sqrt(1 - delta_fraction^2) so the pre-scale sd is 1.
    double bimodal_delta_fraction = 0.9;
    // empirical: source values, resampled with replacement.
    std::vector<double> empirical_source;
};

// An ordered collection of performance measurements.
struct Sample {
    std::vector<double> values;
    std::string label;

    double mean() const;
    double variance() const;  // Bessel-corrected
    double sd() const;
    double median() const;
};

// Immutable generative model: a family standardized so the chosen central
// tendency is 0 and the sd is `sigma`, then translated by `shift`.
class DistributionSpec {
public:
    static DistributionSpec make_standardized(Family family, Shape shape,
                                              CenterMode center_mode,
                                              double sigma, double shift);

    Family family() const { return family_; }
    CenterMode center_mode() const { return center_mode_; }
    double sigma() const { return sigma_; }
    double shift() const { return shift_; }
    const Shape& shape() const { return shape_; }

    // Closed-form mean of the spec's law.
    double mean() const;
    // Closed-form median (exact for analytic families; plug-in for empirical).
    double median() const;

    DistributionSpec shifted(double delta) const;
    DistributionSpec with_center_mode(CenterMode mode) const;

    double draw(RngStream& rng) const;
    Sample sample(std::size_t n, RngStream& rng) const;

private:
    DistributionSpec() = default;

    Family family_ = Family::normal;
    Shape shape_;
    CenterMode center_mode_ = CenterMode::mean;
    double sigma_ = 1.0;
    double shift_ = 0.0;

    // Standardization constants: draw = sigma * (raw - center_) / scale_ + shift.
    double center_ = 0.0;
    double scale_ = 1.0;
    // Cached mean/median of the standardized (pre-shift) law.
    double std_mean_ = 0.0;
    double std_median_ = 0.0;

    double draw_raw(RngStream& rng) const;
};

inline DistributionSpec make_standardized(Family family, Shape shape,
                                          CenterMode center_mode, double sigma,
                                          double shift) {
    return DistributionSpec::make_standardized(family, std::move(shape),
                                               center_mode, sigma, shift);
}

// Builds an empirical spec from a sample file (one value per line, or a
// single-column CSV with optional header). Throws std::runtime_error naming
// the offending row on bad input.
DistributionSpec empirical_from_file(const std::string& path, CenterMode center_mode);

// File ingestion shared with the CLI.
Sample read_sample_file(const std::string& path, const std::string& label);

}  // namespace statcmp
