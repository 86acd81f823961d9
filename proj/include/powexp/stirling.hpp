#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace powexp {

using BigInt = boost::multiprecision::cpp_int;

/// Largest k accepted by double_factorial; k!! then has about 90,000 bits.
inline constexpr int kMaxDoubleFactorialArg = 20000;

/// k!! = k (k-2) (k-4) ... down to 1 or 2; 0!! = 1. DomainError for k < 0,
/// ArithmeticOverflow past kMaxDoubleFactorialArg.
BigInt double_factorial(int k);

/// Exact k!, with the same capacity limit.
BigInt factorial(int k);

struct WallisPartial {
    double raw;       // [(2n)!! / (2n-1)!!]^2
    double corrected; // raw / (2n+1), which tends to pi/2 from below
};

/// Both forms of the Wallis partial product, from a log-space sum.
/// DomainError for n < 1.
WallisPartial wallis_partial(int n);

/// Logarithms of (2n)! and its two closed-form approximations
///   approx49 = log(2n sqrt(2 pi) (2n/e)^{2n})
///   approx50 = log(sqrt(2n) sqrt(2 pi) (2n/e)^{2n}),
/// with relative errors exp(approx - log_exact) - 1.
struct FactorialReport {
    int n = 0;
    double log_exact = 0.0;
    double approx49 = 0.0;
    double approx50 = 0.0;
    double rel_err49 = 0.0;
    double rel_err50 = 0.0;
    double ratio_49_over_50 = 0.0; // sqrt(2n)
    bool exact_from_integer = false; // false: log (2n)! from a summed-log form
};

/// Exact big-integer factorial up to 2n <= kExactFactorialCap, compensated
/// sum of log k beyond. DomainError for n < 1 or n > 10^6.
FactorialReport stirling_report(int n);

inline constexpr int kExactFactorialCap = 2000;

} // namespace powexp
