#include "powexp/gennormal.hpp"

#include "powexp/errors.hpp"
#include "powexp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace powexp {

namespace {

void require_even_order(int n, const char* who) {
    if (n < 2 || n % 2 != 0)
        throw DomainError(std::string(who) + ": n must be an even integer >= 2, got " + std::to_string(n));
}

double ipow(double x, int k) {
    double result = 1.0;
    for (; k > 0; k >>= 1) {
        if (k & 1)
            result *= x;
        x *= x;
    }
    return result;
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            c_ += (sum_ - t) + v;
        else
            c_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

} // namespace

GenNormal::GenNormal(double m, double sigma, int n) : m_(m), sigma_(sigma), n_(n) {
    require_even_order(n, "GenNormal");
    if (!std::isfinite(m))
        throw DomainError("GenNormal: location must be finite");
    if (!(std::isfinite(sigma) && sigma > 0.0))
        throw DomainError("GenNormal: sigma must be finite and positive");
}

Normalization normalization(int n) {
    require_even_order(n, "normalization");
    const double p_n = 2.0 * quadrature::gamma(1.0 + 1.0 / n);
    return {p_n, 1.0 / (std::pow(static_cast<double>(n), 1.0 / n) * p_n)};
}

double standardized_pdf(int n, double z) {
    const double a = normalization(n).a_sigma;
    return a * std::exp(-ipow(std::abs(z), n) / n);
}

double pdf(const GenNormal& d, double x) {
    return standardized_pdf(d.order(), d.standardize(x)) / d.scale();
}

PdfDerivatives pdf_derivatives(const GenNormal& d, double z) {
    const int n = d.order();
    const double y = standardized_pdf(n, z);
    return {-ipow(z, n - 1) * y, ipow(z, n - 2) * (ipow(z, n) - (n - 1)) * y};
}

InflexionPoints inflexion_points(int n) {
    require_even_order(n, "inflexion_points");
    const double nd = n;
    return {std::pow(nd - 1.0, 1.0 / nd), std::exp(-(nd - 1.0) / nd)};
}

SeriesEval cdf(const GenNormal& d, double x, const TruncationPolicy& p) {
    p.validate();
    if (std::isnan(x))
        throw DomainError("cdf: x is NaN");
    const int n = d.order();
    const double z = d.standardize(x);
    // Substituting t = n^{1/n} s turns the density integral into one of
    // e^{-s^n}, so the CDF is 1/2 + F_neg(w) / P_n with w = z / n^{1/n}.
    const double w = z / std::pow(static_cast<double>(n), 1.0 / n);
    if (!std::isfinite(w) || ipow(std::abs(w), n) > kMaxExponent) {
        SeriesEval snapped;
        snapped.value = w > 0.0 ? 1.0 : 0.0;
        snapped.terms_used = 0;
        return snapped;
    }
    SeriesEval f = antiderivative({w, n, Sign::Neg}, p);
    f.value = std::clamp(0.5 + f.value / normalization(n).p_n, 0.0, 1.0);
    return f;
}

MomentValue central_moment_gamma(const GenNormal& d, int order) {
    if (order < 0 || order % 2 != 0)
        throw DomainError("central_moment_gamma: order must be even and >= 0, got " + std::to_string(order));
    if (order == 0)
        return {0, 1.0};
    const double nd = d.order();
    const double scale = std::pow(nd, 1.0 / nd) * d.scale();
    const double ratio = quadrature::gamma((order + 1.0) / nd) / quadrature::gamma(1.0 / nd);
    return {order, ipow(scale, order) * ratio};
}

RecurrenceMoment central_moment_recurrence(const GenNormal& d, int order) {
    if (order < 0 || order % 2 != 0)
        throw DomainError("central_moment_recurrence: order must be even and >= 0, got " +
                          std::to_string(order));
    const int n = d.order();
    const double sigma_n = ipow(d.scale(), n);
    RecurrenceMoment out;
    double factor = 1.0;
    int k = order;
    while (k >= n) {
        factor *= sigma_n * (k + 1 - n);
        k -= n;
        ++out.steps;
    }
    out.fundamental_order = k;
    const double terminal = k == 0 ? 1.0 : central_moment_gamma(d, k).value;
    out.moment = {order, factor * terminal};
    return out;
}

MomentValue moment_kn(const GenNormal& d, int k) {
    if (k < 1)
        throw DomainError("moment_kn: k must be >= 1");
    const int n = d.order();
    const double sigma_n = ipow(d.scale(), n);
    double value = 1.0;
    for (int r = 0; r < k; ++r)
        value *= sigma_n * (1.0 + r * n);
    return {k * n, value};
}

MomentValue odd_moment(const GenNormal&, int order) {
    if (order < 1 || order % 2 == 0)
        throw DomainError("odd_moment: order must be odd and >= 1, got " + std::to_string(order));
    return {order, 0.0};
}

MomentValue central_moment(const GenNormal& d, int order) {
    if (order < 0)
        throw DomainError("central_moment: order must be >= 0");
    return order % 2 == 1 ? odd_moment(d, order) : central_moment_gamma(d, order);
}

std::vector<MomentValue> fundamental_moments(const GenNormal& d) {
    std::vector<MomentValue> out;
    for (int k = 0; k <= d.order() - 2; k += 2)
        out.push_back(central_moment_gamma(d, k));
    return out;
}

ClassicalKurtosis classical_kurtosis(int n) {
    require_even_order(n, "classical_kurtosis");
    const double nd = n;
    const double g1 = quadrature::gamma(1.0 / nd);
    const double g3 = quadrature::gamma(3.0 / nd);
    const double g5 = quadrature::gamma(5.0 / nd);
    const double kurt = g5 * g1 / (g3 * g3);
    const double beta_route = std::beta(1.0 / nd, 5.0 / nd) / std::beta(3.0 / nd, 3.0 / nd);
    return {kurt, kurt - 3.0, beta_route};
}

ShapeStats generalized_shape(std::span<const MomentValue> moments, int n_ref) {
    require_even_order(n_ref, "generalized_shape");
    auto find = [&](int order) -> double {
        auto it = std::find_if(moments.begin(), moments.end(),
                               [order](const MomentValue& m) { return m.order == order; });
        if (it == moments.end())
            throw MissingMoment("generalized_shape: moment of order " + std::to_string(order) + " is required");
        return it->value;
    };
    const double mn = find(n_ref);
    const double mn1 = find(n_ref + 1);
    const double m2n = find(2 * n_ref);
    if (mn == 0.0)
        throw ZeroDenominator("generalized_shape: m_" + std::to_string(n_ref) + " is zero");

    ShapeStats out;
    out.n_ref = n_ref;
    out.kurtosis = m2n / (mn * mn);
    out.kurtosis_excess = out.kurtosis - (1.0 + n_ref);
    // Even roots of a negative ratio are undefined, so the root is taken on
    // magnitudes and the sign of m_{n+1} is reported separately.
    out.skew_coeff = std::abs(mn1) / std::pow(std::abs(mn), (n_ref + 1.0) / n_ref);
    out.skew_sign = (mn1 > 0.0) - (mn1 < 0.0);
    return out;
}

std::vector<MomentValue> empirical_central_moments(std::span<const double> data, int max_order) {
    if (data.empty())
        throw EmptyData("empirical_central_moments: no data");
    if (max_order < 2)
        throw std::invalid_argument("empirical_central_moments: max_order must be >= 2");

    CompensatedSum total;
    for (double v : data)
        total.add(v);
    const double mean = total.value() / static_cast<double>(data.size());

    std::vector<CompensatedSum> sums(static_cast<std::size_t>(max_order));
    for (double v : data) {
        const double dev = v - mean;
        double power = 1.0;
        for (int k = 1; k <= max_order; ++k) {
            power *= dev;
            sums[k - 1].add(power);
        }
    }
    std::vector<MomentValue> out;
    out.reserve(sums.size());
    for (int k = 1; k <= max_order; ++k)
        out.push_back({k, sums[k - 1].value() / static_cast<double>(data.size())});
    return out;
}

MultivariateGenNormal::MultivariateGenNormal(std::vector<GenNormal> components)
    : components_(std::move(components)) {
    if (components_.empty())
        throw std::invalid_argument("MultivariateGenNormal: at least one component is required");
}

double multivariate_pdf(const MultivariateGenNormal& mv, std::span<const double> z) {
    if (z.size() != mv.dimension())
        throw DimensionMismatch("multivariate_pdf: expected " + std::to_string(mv.dimension()) +
                                " coordinates, got " + std::to_string(z.size()));
    double prefactor = 1.0;
    double exponent = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const int n = mv.components()[i].order();
        prefactor *= normalization(n).a_sigma;
        exponent += ipow(std::abs(z[i]), n) / n;
    }
    return prefactor * std::exp(-exponent);
}

double rect_limit(double x, int n) {
    require_even_order(n, "rect_limit");
    return std::exp(-std::pow(x, n));
}

double rect_limit(double x, InfiniteOrder) {
    const double ax = std::abs(x);
    if (ax < 1.0)
        return 1.0;
    if (ax == 1.0)
        return std::exp(-1.0);
    return 0.0;
}

} // namespace powexp
