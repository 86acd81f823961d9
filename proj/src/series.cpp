#include "powexp/series.hpp"

#include "powexp/double_double.hpp"
#include "powexp/errors.hpp"
#include "powexp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace powexp {

using detail::DoubleDouble;

namespace {

// Below this exponent e^{E} is too small to scale the first term directly
// and the terms are formed from their logarithms instead.

void require_order(int n, const char* who) {
    if (n < 1)
        throw DomainError(std::string(who) + ": n must be a positive integer, got " + std::to_string(n));
}

void require_finite(double x, const char* who) {
    if (!std::isfinite(x))
        throw DomainError(std::string(who) + ": x must be finite");
}

DoubleDouble power(double x, int n) {
    DoubleDouble result(1.0);
    DoubleDouble base(x);
    for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
        if (e & 1u)
            result = result * base;
        if (e > 1)
            base = base * base;
    }
    return result;
}

class Accumulator {
public:
    explicit Accumulator(const TruncationPolicy& p) : policy_(p) {}

    // True when the stopping rule fires on this term.
    bool add(int r, DoubleDouble term) {
        sum_ = sum_ + term;
        double mag = std::abs(term.value());
        abs_sum_ += mag;
        last_ = mag;
        ++count_;
        double threshold = std::max(policy_.abs_tol, policy_.rel_tol * std::abs(sum_.value()));
        bool stop = r >= 1 && mag < threshold && mag < prev_;
        prev_ = mag;
        return stop;
    }

    SeriesEval finish(bool converged) const {
        SeriesEval out;
        out.value = sum_.value();
        out.terms_used = count_;
        out.last_term_magnitude = last_;
        out.converged = converged;
        double s = std::abs(out.value);
        out.cancellation_index = s > 0.0 ? std::max(1.0, abs_sum_ / s) : 1.0;
        return out;
    }

    DoubleDouble sum() const { return sum_; }

private:
    const TruncationPolicy& policy_;
    DoubleDouble sum_;
    double abs_sum_ = 0.0;
    double prev_ = std::numeric_limits<double>::infinity();
    double last_ = 0.0;
    int count_ = 0;
};

// Sums first, next(first, 1), next(next(..), 2), ... under the policy.
template <class Next>
SeriesEval sum_series(const TruncationPolicy& p, DoubleDouble first, Next next) {
    Accumulator acc(p);
    DoubleDouble term = first;
    if (acc.add(0, term))
        return acc.finish(true);
    for (int r = 1; r < p.max_terms; ++r) {
        term = next(term, r);
        if (acc.add(r, term))
            return acc.finish(true);
    }
    return acc.finish(false);
}

SeriesEval zero_eval() {
    SeriesEval out;
    out.terms_used = 1;
    return out;
}

double exponent_of(Sign sign, double u) { return sign == Sign::Pos ? u : -u; }

void check_result(const SeriesEval& e, const char* who) {
    if (!std::isfinite(e.value))
        throw OverflowError(std::string(who) + ": series terms overflow double");
}

} // namespace

void TruncationPolicy::validate() const {
    if (max_terms < 1)
        throw std::invalid_argument("TruncationPolicy: max_terms must be >= 1");
    if (!(std::isfinite(rel_tol) && rel_tol > 0.0))
        throw std::invalid_argument("TruncationPolicy: rel_tol must be finite and positive");
    if (!(std::isfinite(abs_tol) && abs_tol > 0.0))
        throw std::invalid_argument("TruncationPolicy: abs_tol must be finite and positive");
}

SeriesEval bracket_series(const SeriesQuery& q, const TruncationPolicy& p) {
    require_order(q.n, "bracket_series");
    require_finite(q.x, "bracket_series");
    p.validate();
    if (q.x == 0.0)
        return zero_eval();

    // t_{r+1} = t_r * (s n x^n) / (1 + (r+1) n), s = -1 for Pos.
    DoubleDouble ratio = power(q.x, q.n) * static_cast<double>(q.n);
    if (q.sign == Sign::Pos)
        ratio = -ratio;
    const double nd = q.n;
    SeriesEval out = sum_series(p, DoubleDouble(q.x), [&](DoubleDouble t, int r) {
        return (t * ratio) / (1.0 + r * nd);
    });
    check_result(out, "bracket_series");
    return out;
}

SeriesEval antiderivative(const SeriesQuery& q, const TruncationPolicy& p) {
    require_order(q.n, "antiderivative");
    require_finite(q.x, "antiderivative");
    p.validate();
    if (q.x == 0.0)
        return zero_eval();

    const DoubleDouble u = power(q.x, q.n);
    const double exponent = exponent_of(q.sign, u.value());
    if (exponent > kMaxExponent)
        throw OverflowError("antiderivative: exponent " + std::to_string(exponent) +
                            " exceeds the working range " + std::to_string(kMaxExponent));

    if (exponent > 0.0) {
        // Alternating bracket times a large factor. Shrink abs_tol so the
        // scaled last term still honours it.
        const double scale = std::exp(exponent);
        TruncationPolicy inner = p;
        inner.abs_tol = std::max(p.abs_tol / scale, std::numeric_limits<double>::min());
        SeriesEval b = bracket_series(q, inner);
        b.value *= scale;
        b.last_term_magnitude *= scale;
        return b;
    }

    if (exponent < -kMaxExponent) {
        // The remaining tail is below e^{-45} < 1e-19 relative to
        // Gamma(1 + 1/n), so the integral has saturated. Only reachable for
        // x > 0 or even n, where the sign of x picks the half-line.
        SeriesEval out;
        out.value = std::copysign(quadrature::gamma(1.0 + 1.0 / q.n), q.x);
        out.terms_used = 1;
        out.last_term_magnitude = std::exp(exponent);
        return out;
    }

    // e^{E} folded into the first term keeps every partial sum in range.
    DoubleDouble ratio = u * static_cast<double>(q.n);
    if (q.sign == Sign::Pos)
        ratio = -ratio;
    const double nd = q.n;
    DoubleDouble first = DoubleDouble(q.x) * std::exp(exponent);
    SeriesEval out = sum_series(p, first, [&](DoubleDouble t, int r) {
        return (t * ratio) / (1.0 + r * nd);
    });
    check_result(out, "antiderivative");
    return out;
}

SeriesEval maclaurin_antiderivative(const SeriesQuery& q, const TruncationPolicy& p) {
    require_order(q.n, "maclaurin_antiderivative");
    require_finite(q.x, "maclaurin_antiderivative");
    p.validate();
    if (q.x == 0.0)
        return zero_eval();

    DoubleDouble u = power(q.x, q.n);
    if (std::abs(u.value()) > kMaxExponent)
        throw OverflowError("maclaurin_antiderivative: |x|^n exceeds the working range");
    if (q.sign == Sign::Neg)
        u = -u;

    // base_m = x (+-u)^m / m!, term_m = base_m / (nm + 1)
    DoubleDouble base(q.x);
    const double nd = q.n;
    SeriesEval out = sum_series(p, base, [&](DoubleDouble, int m) {
        base = (base * u) / static_cast<double>(m);
        return base / (nd * m + 1.0);
    });
    return out;
}

EvenOddSplit even_odd_split(double x, int n, const TruncationPolicy& p) {
    require_order(n, "even_odd_split");
    require_finite(x, "even_odd_split");
    p.validate();
    if (x == 0.0)
        return {zero_eval(), zero_eval()};

    const DoubleDouble ratio = power(x, n) * static_cast<double>(n);
    const double nd = n;

    // The stopping rule watches the combined sequence; each half keeps its
    // own sum and diagnostics.
    Accumulator whole(p), even(p), odd(p);
    DoubleDouble term(x);
    whole.add(0, term);
    even.add(0, term);
    bool converged = false;
    int r = 1;
    for (; r < p.max_terms; ++r) {
        term = (term * ratio) / (1.0 + r * nd);
        (r % 2 == 0 ? even : odd).add(r, term);
        if (whole.add(r, term)) {
            converged = true;
            break;
        }
    }
    EvenOddSplit out{even.finish(converged), odd.finish(converged)};
    if (!std::isfinite(out.g.value) || !std::isfinite(out.f.value))
        throw OverflowError("even_odd_split: series terms overflow double");
    return out;
}

CoefficientIdentity coefficient_identity(int m, int n) {
    if (m < 0)
        throw DomainError("coefficient_identity: m must be >= 0");
    require_order(n, "coefficient_identity");

    using boost::multiprecision::cpp_int;
    auto check_capacity = [](const Rational& v) {
        const cpp_int& num = numerator(v);
        const cpp_int& den = denominator(v);
        if ((num != 0 && msb(abs(num)) >= kMaxRationalBits) || msb(den) >= kMaxRationalBits)
            throw ArithmeticOverflow("coefficient_identity: exact rationals exceed capacity");
    };

    cpp_int m_factorial = 1;
    for (int k = 2; k <= m; ++k)
        m_factorial *= k;
    CoefficientIdentity out;
    out.lhs = Rational(cpp_int(1), m_factorial * (cpp_int(n) * m + 1));
    check_capacity(out.lhs);

    // prod_{p=0}^{j} (1 + pn) for j = 0..m
    std::vector<cpp_int> rising(static_cast<std::size_t>(m) + 1);
    rising[0] = 1;
    for (int j = 1; j <= m; ++j)
        rising[j] = rising[j - 1] * (cpp_int(j) * n + 1);

    Rational sum = 0;
    cpp_int r_factorial = 1;
    for (int r = 0; r <= m; ++r) {
        if (r > 0)
            r_factorial *= r;
        cpp_int power_n = boost::multiprecision::pow(cpp_int(n), static_cast<unsigned>(m - r));
        Rational term(power_n, r_factorial * rising[m - r]);
        sum += (r % 2 == 0) ? term : Rational(-term);
        check_capacity(sum);
    }
    out.rhs = (m % 2 == 0) ? sum : Rational(-sum);
    out.equal = out.lhs == out.rhs;
    return out;
}

double odd_reflection_check(double x, int n, const TruncationPolicy& p) {
    require_order(n, "odd_reflection_check");
    if (n % 2 == 0)
        throw DomainError("odd_reflection_check: n must be odd, got " + std::to_string(n));
    double neg = antiderivative({x, n, Sign::Neg}, p).value;
    double pos = antiderivative({-x, n, Sign::Pos}, p).value;
    return std::abs(neg + pos);
}

bool ConvergenceDomain::admits(double endpoint) const {
    if (std::isnan(endpoint))
        return false;
    if (endpoint == -std::numeric_limits<double>::infinity())
        return lower == LowerEnd::ClosedNegInf;
    if (endpoint == std::numeric_limits<double>::infinity())
        return upper == UpperEnd::ClosedPosInf;
    return true;
}

ConvergenceDomain convergence_domain(int n, Sign sign) {
    require_order(n, "convergence_domain");
    const bool even = n % 2 == 0;
    if (sign == Sign::Pos) {
        if (even)
            return {LowerEnd::FiniteOnly, UpperEnd::FiniteOnly};
        return {LowerEnd::ClosedNegInf, UpperEnd::FiniteOnly};
    }
    if (even)
        return {LowerEnd::ClosedNegInf, UpperEnd::ClosedPosInf};
    return {LowerEnd::FiniteOnly, UpperEnd::ClosedPosInf};
}

const char* to_string(LowerEnd e) {
    switch (e) {
    case LowerEnd::ClosedNegInf: return "closed_neg_inf";
    case LowerEnd::OpenNegInf: return "open_neg_inf";
    case LowerEnd::FiniteOnly: return "finite_only";
    }
    return "?";
}

const char* to_string(UpperEnd e) {
    switch (e) {
    case UpperEnd::ClosedPosInf: return "closed_pos_inf";
    case UpperEnd::OpenPosInf: return "open_pos_inf";
    case UpperEnd::FiniteOnly: return "finite_only";
    }
    return "?";
}

const char* to_string(Sign s) { return s == Sign::Pos ? "pos" : "neg"; }

SeriesEval definite_integral(double a, double b, int n, Sign sign, const TruncationPolicy& p) {
    require_order(n, "definite_integral");
    p.validate();
    if (std::isnan(a) || std::isnan(b))
        throw DomainError("definite_integral: NaN endpoint");
    if (a > b)
        throw DomainError("definite_integral: requires a <= b");

    const ConvergenceDomain domain = convergence_domain(n, sign);
    for (double end : {a, b}) {
        if (!domain.admits(end)) {
            std::string rule = sign == Sign::Pos
                ? "integral of e^{x^n} converges at -inf only for odd n and never at +inf"
                : "integral of e^{-x^n} converges at +inf for all n and at -inf only for even n";
            throw DivergentIntegral("definite_integral: endpoint " + std::string(end > 0 ? "+inf" : "-inf") +
                                    " diverges for n=" + std::to_string(n) + " (" + rule + ")");
        }
    }
    if (a == b)
        return SeriesEval{};

    const double tail = quadrature::gamma(1.0 + 1.0 / n);
    auto at = [&](double x) -> SeriesEval {
        if (std::isinf(x)) {
            SeriesEval e;
            e.value = x > 0.0 ? tail : -tail;
            return e;
        }
        return antiderivative({x, n, sign}, p);
    };
    SeriesEval upper = at(b);
    SeriesEval lower = at(a);

    SeriesEval out;
    out.value = upper.value - lower.value;
    out.terms_used = std::max(upper.terms_used, lower.terms_used);
    out.last_term_magnitude = std::max(upper.last_term_magnitude, lower.last_term_magnitude);
    out.converged = upper.converged && lower.converged;
    out.cancellation_index = std::max(upper.cancellation_index, lower.cancellation_index);
    return out;
}

} // namespace powexp
