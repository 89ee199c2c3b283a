#ifndef CDFMR_SPECIAL_FUNCTIONS_HPP
#define CDFMR_SPECIAL_FUNCTIONS_HPP

#include <cstdint>

namespace cdfmr {

// Complementary error function. Relative error <= 1e-12 on |x| <= 10.
double erfc(double x);

// Gaussian Q function, Q(x) = 0.5 * erfc(x / sqrt(2)).
double q_func(double x);

// Scaled exponential integral e^x * E1(x) for x > 0.
//
// The scaled form stays representable for any positive x, while the bare
// E1(x) underflows near x ~ 700. Series for x <= 1, continued fraction
// (modified Lentz) for x > 1. Throws std::domain_error for x <= 0.
double exp_e1(double x);

// Gamma(m + 0.5) for integer m >= 0, by exact recurrence from
// Gamma(0.5) = sqrt(pi). Throws std::overflow_error when the result
// exceeds double range (m > 170 or so).
double gamma_half_integer(int m);

// Exact binomial coefficient, 0 <= k <= n <= 62 (fits in uint64_t).
// Throws std::out_of_range outside that window.
std::uint64_t binom(int n, int k);

} // namespace cdfmr

#endif
