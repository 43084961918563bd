// Independent numeric oracles used by the test suites. These deliberately
// avoid the library's special-function code paths: everything here is plain
// adaptive quadrature over densities.
#pragma once

#include <cmath>
#include <functional>

namespace oracles {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double eps, double whole, int depth) {
    const double c = 0.5 * (a + b);
    const double left = simpson(f, a, c);
    const double right = simpson(f, c, b);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, c, eps / 2.0, left, depth - 1) +
           adaptive_simpson(f, c, b, eps / 2.0, right, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-13) {
    return adaptive_simpson(f, a, b, eps, simpson(f, a, b), 60);
}

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

// Phi(x) by quadrature from 0 (Phi(0) = 1/2 by symmetry).
inline double normal_cdf_quadrature(double x) {
    return 0.5 + integrate([](double u) { return normal_pdf(u); }, 0.0, x);
}

inline double student_t_pdf(double t, double dof) {
    const double log_c = std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
                         0.5 * std::log(dof * M_PI);
    return std::exp(log_c - 0.5 * (dof + 1.0) * std::log1p(t * t / dof));
}

// P(T > t) by quadrature of the density from 0 outward.
inline double student_t_sf_quadrature(double t, double dof) {
    auto pdf = [dof](double u) { return student_t_pdf(u, dof); };
    const double at = std::fabs(t);
    const double half_to_t = integrate(pdf, 0.0, at);
    const double sf_abs = 0.5 - half_to_t;
    return t >= 0.0 ? sf_abs : 1.0 - sf_abs;
}

// I_x(a, b) by quadrature of the beta density.
inline double incomplete_beta_quadrature(double a, double b, double x) {
    const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
    auto pdf = [=](double u) {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        return std::exp(log_norm + (a - 1.0) * std::log(u) + (b - 1.0) * std::log1p(-u));
    };
    return integrate(pdf, 0.0, x);
}

}  // namespace oracles
