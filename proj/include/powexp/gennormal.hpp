#pragma once

#include "powexp/series.hpp"

#include <span>
#include <vector>

namespace powexp {

/// Order-(n/2) normal distribution with density
///
///     y(x) = 1 / (n^{1/n} sigma P_n) * exp(-((x - m)/sigma)^n / n),
///
/// P_n = 2 Gamma(1 + 1/n), for even n >= 2. n = 2 is the classical normal.
///
/// sigma is a scale parameter. The standard deviation is sqrt(m_2) =
/// sigma * n^{1/n} * sqrt(Gamma(3/n) / Gamma(1/n)), which equals sigma only
/// when n = 2.
class GenNormal {
public:
    /// DomainError unless n is even and >= 2, sigma > 0 and m finite.
    GenNormal(double m, double sigma, int n);

    double location() const { return m_; }
    double scale() const { return sigma_; }
    int order() const { return n_; }

    double standardize(double x) const { return (x - m_) / sigma_; }

private:
    double m_;
    double sigma_;
    int n_;
};

struct Normalization {
    double p_n;     // integral of e^{-x^n} over the real line
    double a_sigma; // A * sigma = 1 / (n^{1/n} P_n)
};

Normalization normalization(int n);

double pdf(const GenNormal& d, double x);

/// Standardized density y(z) = exp(-z^n/n) / (n^{1/n} P_n) (sigma * pdf).
double standardized_pdf(int n, double z);

struct PdfDerivatives {
    double dy;
    double d2y;
};

/// First and second derivatives of the standardized density at z.
PdfDerivatives pdf_derivatives(const GenNormal& d, double z);

struct InflexionPoints {
    double z_abs;    // (n-1)^{1/n}
    double ordinate; // e^{-(n-1)/n}, the un-normalized e^{-z^n/n} there
};

InflexionPoints inflexion_points(int n);

/// Probability P(X <= x). Past |w|^n > kMaxExponent, w = z / n^{1/n}, the
/// value snaps to 0 or 1. converged/terms_used come from the series.
SeriesEval cdf(const GenNormal& d, double x, const TruncationPolicy& p = {});

struct MomentValue {
    int order = 0;
    double value = 0.0;
};

/// m_{2p} = (n^{1/n} sigma)^{2p} Gamma((2p+1)/n) / Gamma(1/n).
/// DomainError for odd or negative order.
MomentValue central_moment_gamma(const GenNormal& d, int order);

struct RecurrenceMoment {
    MomentValue moment;
    int fundamental_order = 0; // order % n, the irreducible moment reached
    int steps = 0;             // reductions m_k -> m_{k-n} applied
};

/// Reduces m_k = sigma^n (k + 1 - n) m_{k-n} until k < n. The chain closes
/// on m_0 = 1 when n divides k; otherwise the remaining fundamental moment
/// comes from central_moment_gamma.
RecurrenceMoment central_moment_recurrence(const GenNormal& d, int order);

/// m_{kn} = (sigma^n)^k prod_{r=0}^{k-1} (1 + rn). DomainError for k < 1.
MomentValue moment_kn(const GenNormal& d, int k);

/// Odd central moments vanish by symmetry. DomainError for even order.
MomentValue odd_moment(const GenNormal& d, int order);

/// Any central moment: odd orders are 0, even orders use the gamma form.
MomentValue central_moment(const GenNormal& d, int order);

/// m_0, m_2, ..., m_{n-2}: the moments the recurrence cannot reduce.
std::vector<MomentValue> fundamental_moments(const GenNormal& d);

struct ClassicalKurtosis {
    double kurtosis;   // Gamma(5/n) Gamma(1/n) / Gamma(3/n)^2
    double excess;     // kurtosis - 3
    double beta_route; // B(1/n, 5/n) / B(3/n, 3/n)
};

ClassicalKurtosis classical_kurtosis(int n);

struct ShapeStats {
    double skew_coeff = 0.0; // (|m_{n+1}|^n / |m_n|^{n+1})^{1/n}
    int skew_sign = 0;       // sign of m_{n+1}
    double kurtosis = 0.0;   // m_{2n} / m_n^2
    double kurtosis_excess = 0.0;
    int n_ref = 2;
};

/// Generalized shape statistics relative to the order-(n_ref/2) normal.
/// Needs orders n_ref, n_ref + 1 and 2 n_ref among `moments`.
/// MissingMoment / ZeroDenominator / DomainError (odd n_ref).
ShapeStats generalized_shape(std::span<const MomentValue> moments, int n_ref);

/// (1/N) sum (x_i - mean)^k for k = 1..max_order. EmptyData on empty input,
/// std::invalid_argument for max_order < 2.
std::vector<MomentValue> empirical_central_moments(std::span<const double> data, int max_order);

/// Independent components; see multivariate_pdf.
class MultivariateGenNormal {
public:
    /// std::invalid_argument if components is empty.
    explicit MultivariateGenNormal(std::vector<GenNormal> components);

    const std::vector<GenNormal>& components() const { return components_; }
    std::size_t dimension() const { return components_.size(); }

private:
    std::vector<GenNormal> components_;
};

/// Product of standardized marginal densities at standardized z.
/// DimensionMismatch if z.size() differs from the component count.
double multivariate_pdf(const MultivariateGenNormal& mv, std::span<const double> z);

struct InfiniteOrder {};
inline constexpr InfiniteOrder kInfiniteOrder{};

/// e^{-x^n} for even n; DomainError for odd or non-positive n.
double rect_limit(double x, int n);

/// The n -> infinity limit: 1 on (-1, 1), 1/e at +-1, 0 elsewhere.
double rect_limit(double x, InfiniteOrder);

} // namespace powexp
