#include "powexp/stirling.hpp"

#include "powexp/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace powexp {

namespace {

void require_capacity(int k, const char* who) {
    if (k < 0)
        throw DomainError(std::string(who) + ": argument must be >= 0");
    if (k > kMaxDoubleFactorialArg)
        throw ArithmeticOverflow(std::string(who) + ": argument " + std::to_string(k) +
                                 " exceeds the exact-integer cap " +
                                 std::to_string(kMaxDoubleFactorialArg));
}

// Natural log of a positive big integer: keep the top 53 bits as a double.
double log_big(const BigInt& v) {
    const unsigned bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 1000)
        return std::log(v.convert_to<double>());
    const unsigned shift = bits - 64;
    const double top = static_cast<BigInt>(v >> shift).convert_to<double>();
    return std::log(top) + shift * std::numbers::ln2;
}

class CompensatedSum {
public:
    void add(double v) {
        double t = sum_ + v;
        c_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

} // namespace

BigInt double_factorial(int k) {
    require_capacity(k, "double_factorial");
    BigInt out = 1;
    for (int i = k; i > 1; i -= 2)
        out *= i;
    return out;
}

BigInt factorial(int k) {
    require_capacity(k, "factorial");
    BigInt out = 1;
    for (int i = 2; i <= k; ++i)
        out *= i;
    return out;
}

WallisPartial wallis_partial(int n) {
    if (n < 1)
        throw DomainError("wallis_partial: n must be >= 1");
    // log[(2k)/(2k-1)]^2 = 2 log1p(1/(2k-1))
    CompensatedSum log_raw;
    for (int k = 1; k <= n; ++k)
        log_raw.add(2.0 * std::log1p(1.0 / (2.0 * k - 1.0)));
    const double lr = log_raw.value();
    return {std::exp(lr), std::exp(lr - std::log(2.0 * n + 1.0))};
}

FactorialReport stirling_report(int n) {
    if (n < 1 || n > 1'000'000)
        throw DomainError("stirling_report: n must lie in [1, 1e6]");
    FactorialReport r;
    r.n = n;
    const int m = 2 * n;
    if (m <= kExactFactorialCap) {
        r.log_exact = log_big(factorial(m));
        r.exact_from_integer = true;
    } else {
        CompensatedSum s;
        for (int k = 2; k <= m; ++k)
            s.add(std::log(static_cast<double>(k)));
        r.log_exact = s.value();
    }
    const double lm = std::log(static_cast<double>(m));
    const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
    const double core = m * (lm - 1.0);
    const double pre49 = lm + half_log_2pi;
    const double pre50 = 0.5 * lm + half_log_2pi;
    r.approx49 = pre49 + core;
    r.approx50 = pre50 + core;
    // Differences of the large common term 2n (log 2n - 1) would cancel, so
    // the ratio uses only the prefactors.
    r.ratio_49_over_50 = std::exp(pre49 - pre50);
    r.rel_err49 = std::expm1(r.approx49 - r.log_exact);
    r.rel_err50 = std::expm1(r.approx50 - r.log_exact);
    return r;
}

} // namespace powexp
