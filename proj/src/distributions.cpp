#include "statcmp/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace statcmp {

std::string family_name(Family f) {
    switch (f) {
        case Family::normal: return "normal";
        case Family::lognormal: return "lognormal";
        case Family::bimodal: return "bimodal";
        case Family::empirical: return "empirical";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "normal") return Family::normal;
    if (name == "lognormal") return Family::lognormal;
    if (name == "bimodal") return Family::bimodal;
    if (name == "empirical") return Family::empirical;
    throw std::invalid_argument("unknown distribution family: " + name);
}

double Sample::mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double Sample::variance() const {
    if (values.size() < 2) throw std::domain_error("variance needs >= 2 values");
    const double m = mean();
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return ss / static_cast<double>(values.size() - 1);
}

double Sample::sd() const { return std::sqrt(variance()); }

double Sample::median() const {
    if (values.empty()) throw std::domain_error("median of empty sample");
    std::vector<double> v = values;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

namespace {

double vec_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double vec_sd(const std::vector<double>& v) {
    const double m = vec_mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double vec_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

DistributionSpec DistributionSpec::make_standardized(Family family, Shape shape,
                                                     CenterMode center_mode,
                                                     double sigma, double shift) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    DistributionSpec spec;
    spec.family_ = family;
    spec.center_mode_ = center_mode;
    spec.sigma_ = sigma;
    spec.shift_ = shift;

    double raw_mean = 0.0, raw_median = 0.0, raw_sd = 1.0;
    switch (family) {
        case Family::normal:
            break;
        case Family::lognormal: {
            const double s = shape.lognormal_sigma;
            if (!(s > 0.0))
                throw std::invalid_argument("lognormal_sigma must be positive");
            const double es2 = std::exp(s * s);
            raw_mean = std::exp(0.5 * s * s);
            raw_median = 1.0;
            raw_sd = std::sqrt((es2 - 1.0) * es2);
            break;
        }
        case Family::bimodal: {
            const double d = shape.bimodal_delta_fraction;
            if (!(d > 0.0 && d < 1.0))
                throw std::invalid_argument("bimodal_delta_fraction must be in (0, 1)");
            // even mixture of N(-d, 1-d^2) and N(+d, 1-d^2): mean 0, sd 1
            break;
        }
        case Family::empirical: {
            const auto& src = shape.empirical_source;
            if (src.size() < 2)
                throw std::invalid_argument("empirical source needs >= 2 values");
            for (double v : src)
                if (!std::isfinite(v))
                    throw std::invalid_argument("empirical source has non-finite value");
            raw_mean = vec_mean(src);
            raw_median = vec_median(src);
            raw_sd = vec_sd(src);
            if (!(raw_sd > 0.0))
                throw std::invalid_argument("empirical source has zero variance");
            break;
        }
    }

    spec.shape_ = std::move(shape);
    spec.center_ = (center_mode == CenterMode::mean) ? raw_mean : raw_median;
    spec.scale_ = raw_sd;
    spec.std_mean_ = (raw_mean - spec.center_) / raw_sd;
    spec.std_median_ = (raw_median - spec.center_) / raw_sd;
    return spec;
}

double DistributionSpec::mean() const { return sigma_ * std_mean_ + shift_; }

double DistributionSpec::median() const { return sigma_ * std_median_ + shift_; }

DistributionSpec DistributionSpec::shifted(double delta) const {
    DistributionSpec copy = *this;
    copy.shift_ += delta;
    return copy;
}

DistributionSpec DistributionSpec::with_center_mode(CenterMode mode) const {
    if (mode == center_mode_) return *this;
    return make_standardized(family_, shape_, mode, sigma_, shift_);
}

double DistributionSpec::draw_raw(RngStream& rng) const {
    switch (family_) {
        case Family::normal:
            return rng.next_normal();
        case Family::lognormal:
            return std::exp(shape_.lognormal_sigma * rng.next_normal());
        case Family::bimodal: {
            const double d = shape_.bimodal_delta_fraction;
            const double comp_sd = std::sqrt(1.0 - d * d);
            const double mode = (rng.next_u64() & 1u) ? d : -d;
            return mode + comp_sd * rng.next_normal();
        }
        case Family::empirical: {
            const auto& src = shape_.empirical_source;
            return src[rng.next_below(src.size())];
        }
    }
    throw std::logic_error("unreachable");
}

double DistributionSpec::draw(RngStream& rng) const {
    return sigma_ * (draw_raw(rng) - center_) / scale_ + shift_;
}

Sample DistributionSpec::sample(std::size_t n, RngStream& rng) const {
    if (n == 0) throw std::domain_error("sample size must be >= 1");
    Sample s;
    s.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(draw(rng));
    s.label = family_name(family_);
    return s;
}

Sample read_sample_file(const std::string& path, const std::string& label) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sample file: " + path);
    Sample s;
    s.label = label.empty() ? path : label;
    std::string line;
    std::size_t row = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++row;
        // strip comment and whitespace
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        auto first = line.find_first_not_of(" \t\r\n,");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r\n,");
        std::string tok = line.substr(first, last - first + 1);
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            if (!std::isfinite(v)) throw std::invalid_argument(tok);
            s.values.push_back(v);
        } catch (const std::exception&) {
            if (header_allowed && s.values.empty()) {
                header_allowed = false;  // single header line tolerated
                continue;
            }
            std::ostringstream msg;
            msg << path << ": row " << row << ": not a number: '" << tok << "'";
            throw std::runtime_error(msg.str());
        }
        header_allowed = false;
    }
    if (s.values.empty())
        throw std::runtime_error(path + ": no numeric values found");
    return s;
}

DistributionSpec empirical_from_file(const std::string& path, CenterMode center_mode) {
    Sample s = read_sample_file(path, path);
    if (s.values.size() < 2)
        throw std::runtime_error(path + ": need at least 2 values for an empirical distribution");
    Shape shape;
    shape.empirical_source = s.values;
    const double sd = vec_sd(s.values);
    if (!(sd > 0.0))
        throw std::runtime_error(path + ": source sample has zero variance");
    return DistributionSpec::make_standardized(Family::empirical, std::move(shape),
                                               center_mode, sd, 0.0);
}

}  // namespace statcmp
