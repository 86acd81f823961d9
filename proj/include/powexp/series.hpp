#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace powexp {

/// Selects the integrand e^{x^n} (Pos) or e^{-x^n} (Neg).
enum class Sign { Pos, Neg };

struct SeriesQuery {
    double x = 0.0;
    int n = 1;
    Sign sign = Sign::Neg;
};

/// Stopping rule shared by every series in the library. A series stops at
/// the first term r >= 1 with |term_r| < max(abs_tol, rel_tol * |partial|)
/// that is also smaller than |term_{r-1}|. The decrease guard matters for
/// |x|^n > 1 where terms grow before they shrink.
struct TruncationPolicy {
    int max_terms = 200;
    double rel_tol = 1e-16;
    double abs_tol = 1e-300;

    /// Throws std::invalid_argument unless max_terms >= 1 and both
    /// tolerances are finite and positive.
    void validate() const;
};

struct SeriesEval {
    double value = 0.0;
    int terms_used = 0;
    double last_term_magnitude = 0.0;
    bool converged = true;
    /// sum |term| / |sum term|; 1 when nothing cancels.
    double cancellation_index = 1.0;
};

/// Largest exponent E for which e^{E} is formed by the antiderivatives.
/// Past it OverflowError is raised instead of returning a value whose
/// alternating bracket has cancelled away all significant digits.
inline constexpr double kMaxExponent = 45.0;

/// B(x) = sum_r (+-1)^r n^r x^{1+nr} / prod_{p=0}^{r} (1+pn); alternating for
/// Sign::Pos. Terms and partial sums are carried in double-double.
SeriesEval bracket_series(const SeriesQuery& q, const TruncationPolicy& p = {});

/// Antiderivative of e^{+-x^n} with F(0) = 0, as e^{+-x^n} * B(x).
/// OverflowError when the exponential factor exceeds e^{kMaxExponent}; below
/// e^{-kMaxExponent} the value is the saturated +-Gamma(1 + 1/n).
SeriesEval antiderivative(const SeriesQuery& q, const TruncationPolicy& p = {});

/// Term-by-term integrated Maclaurin series sum_m (+-1)^m x^{nm+1}/(m!(nm+1)).
/// OverflowError once |x|^n exceeds kMaxExponent.
SeriesEval maclaurin_antiderivative(const SeriesQuery& q, const TruncationPolicy& p = {});

struct EvenOddSplit {
    SeriesEval g; // even r
    SeriesEval f; // odd r
};

/// Splits the non-alternating bracket into its even-index part g and
/// odd-index part f, so that B_neg = g + f and B_pos = g - f.
EvenOddSplit even_odd_split(double x, int n, const TruncationPolicy& p = {});

using Rational = boost::multiprecision::cpp_rational;

struct CoefficientIdentity {
    Rational lhs;
    Rational rhs;
    bool equal = false;
};

/// Exact check of 1/(m!(nm+1)) = (-1)^m sum_{r=0}^{m} (-1)^r n^{m-r} /
/// (r! prod_{p=0}^{m-r} (1+pn)), the Cauchy-product coefficient of x^{1+mn}.
/// ArithmeticOverflow once an intermediate exceeds kMaxRationalBits.
CoefficientIdentity coefficient_identity(int m, int n);

inline constexpr unsigned kMaxRationalBits = 16384;

/// |F_neg(x) + F_pos(-x)|, which vanishes for odd n. DomainError for even n.
double odd_reflection_check(double x, int n, const TruncationPolicy& p = {});

enum class LowerEnd { ClosedNegInf, OpenNegInf, FiniteOnly };
enum class UpperEnd { ClosedPosInf, OpenPosInf, FiniteOnly };

/// Where the improper integral of e^{+-x^n} may be taken to infinity.
struct ConvergenceDomain {
    LowerEnd lower = LowerEnd::FiniteOnly;
    UpperEnd upper = UpperEnd::FiniteOnly;

    bool admits(double endpoint) const;
};

ConvergenceDomain convergence_domain(int n, Sign sign);

const char* to_string(LowerEnd e);
const char* to_string(UpperEnd e);
const char* to_string(Sign s);

/// Definite integral of e^{+-x^n} over [a, b]; a and b may be +-infinity
/// where convergence_domain admits it, in which case the tail from 0 is the
/// closed form Gamma(1 + 1/n). DivergentIntegral for an inadmissible
/// endpoint, DomainError for a > b.
SeriesEval definite_integral(double a, double b, int n, Sign sign, const TruncationPolicy& p = {});

} // namespace powexp
