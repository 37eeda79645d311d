#pragma once

#include <cmath>

// Overflow-free hyperbolic ratios. Arguments are >= 0 unless noted; every
// function is exact in the small-argument limit via expm1.
namespace splitprob::detail {

// sinh(a)/sinh(b) for 0 <= a, 0 < b. Safe for arbitrarily large a, b.
inline double sinh_ratio(double a, double b) {
    return std::exp(a - b) * std::expm1(-2.0 * a) / std::expm1(-2.0 * b);
}

// cosh(a)/cosh(b), any real a, b
inline double cosh_ratio(double a, double b) {
    a = std::fabs(a);
    b = std::fabs(b);
    return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) / (1.0 + std::exp(-2.0 * b));
}

// [q*cosh(a) + kappa*sinh(a)] / [q*cosh(b) + kappa*sinh(b)], 0 <= a, 0 < b.
inline double robin_ratio(double q, double kappa, double a, double b) {
    const double ea = std::exp(-2.0 * a), eb = std::exp(-2.0 * b);
    const double num = q * (1.0 + ea) + kappa * (1.0 - ea);
    const double den = q * (1.0 + eb) + kappa * (1.0 - eb);
    return std::exp(a - b) * num / den;
}

// sinh(a) / [q*cosh(b) + kappa*sinh(b)]
inline double sinh_over_robin(double a, double q, double kappa, double b) {
    const double ea = std::exp(-2.0 * a), eb = std::exp(-2.0 * b);
    const double den = q * (1.0 + eb) + kappa * (1.0 - eb);
    return std::exp(a - b) * (1.0 - ea) / den;
}

// cosh(a)/sinh(b) for a >= 0, b > 0
inline double cosh_over_sinh(double a, double b) {
    return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) / (-std::expm1(-2.0 * b));
}

// sinh(a)/cosh(b) for any real a, b >= 0
inline double sinh_over_cosh(double a, double b) {
    const double aa = std::fabs(a);
    const double v = std::exp(aa - b) * (-std::expm1(-2.0 * aa)) / (1.0 + std::exp(-2.0 * b));
    return a < 0.0 ? -v : v;
}

inline double csch(double u) { return 2.0 * std::exp(-u) / (-std::expm1(-2.0 * u)); }

inline double coth(double u) { return (1.0 + std::exp(-2.0 * u)) / (-std::expm1(-2.0 * u)); }

inline double sech(double u) {
    u = std::fabs(u);
    return 2.0 * std::exp(-u) / (1.0 + std::exp(-2.0 * u));
}

}  // namespace splitprob::detail
