#pragma once

#include <functional>

namespace powexp::quadrature {

using Integrand = std::function<double(double)>;

struct Request {
    Integrand integrand;
    double a = 0.0;
    double b = 0.0;
    double tol = 1e-10;
    int max_depth = 50;
    // Panels are always split at least this many times before the local
    // error test is trusted; keeps narrow peaks from slipping between the
    // first five samples.
    int min_depth = 4;
};

struct Result {
    double value = 0.0;
    double est_error = 0.0;
    // false when some panel hit max_depth before meeting its share of tol;
    // value and est_error are still the best available.
    bool converged = true;
    long evaluations = 0;
    int depth_reached = 0;
};

/// Adaptive Simpson quadrature with the Richardson (S2 - S1)/15 correction.
/// A panel whose two estimates agree to roundoff is accepted even when its
/// share of tol is smaller than that; est_error still includes it.
/// Throws std::invalid_argument for a > b, non-finite endpoints or tol <= 0.
Result adaptive_integrate(const Request& req);

/// Integral of f over [0, inf) through u = x/(1+x). f must decay at least as
/// fast as e^{-x^n/n} with n = decay_order; points where that bound is below
/// the double underflow threshold are taken as 0 without calling f, and u = 1
/// itself is never evaluated.
Result integrate_halfline(const Integrand& f, int decay_order, double tol, int max_depth = 50);

/// Gamma function on (0, 171.6]. Backed by the C library's tgamma, which is
/// accurate to a few ulp there. DomainError for x <= 0 or NaN, OverflowError
/// past the double range.
double gamma(double x);

} // namespace powexp::quadrature
