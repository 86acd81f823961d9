#include "powexp/quadrature.hpp"

#include "powexp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace powexp::quadrature {

namespace {

constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();

struct Panel {
    double a, fa, m, fm, b, fb, whole;
};

double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

class Simpson {
public:
    Simpson(const Integrand& f, int max_depth, int min_depth)
        : f_(f), max_depth_(max_depth), min_depth_(min_depth) {}

    double eval(double x) {
        ++result_.evaluations;
        return f_(x);
    }

    double refine(const Panel& p, double tol, int depth) {
        result_.depth_reached = std::max(result_.depth_reached, depth);
        double lm = 0.5 * (p.a + p.m);
        double rm = 0.5 * (p.m + p.b);
        double flm = eval(lm);
        double frm = eval(rm);
        double left = simpson(p.a, p.fa, flm, p.m, p.fm);
        double right = simpson(p.m, p.fm, frm, p.b, p.fb);
        double delta = left + right - p.whole;
        double local_err = std::abs(delta) / 15.0;

        // Panel too narrow to split further in double precision, or the
        // two estimates already agree to roundoff so halving cannot help.
        bool exhausted = !(p.a < lm && lm < p.m && p.m < rm && rm < p.b) ||
                         std::abs(delta) <= kRoundoff * std::abs(left + right);

        if (depth >= min_depth_ && (local_err <= tol || exhausted)) {
            result_.est_error += local_err;
            return left + right + delta / 15.0;
        }
        if (depth >= max_depth_ || exhausted) {
            result_.converged = false;
            result_.est_error += local_err;
            return left + right + delta / 15.0;
        }
        return refine({p.a, p.fa, lm, flm, p.m, p.fm, left}, 0.5 * tol, depth + 1) +
               refine({p.m, p.fm, rm, frm, p.b, p.fb, right}, 0.5 * tol, depth + 1);
    }

    Result run(double a, double b, double tol) {
        double fa = eval(a);
        double fb = eval(b);
        double m = 0.5 * (a + b);
        double fm = eval(m);
        result_.value = refine({a, fa, m, fm, b, fb, simpson(a, fa, fm, b, fb)}, tol, 0);
        return result_;
    }

private:
    const Integrand& f_;
    int max_depth_;
    int min_depth_;
    Result result_;
};

} // namespace

Result adaptive_integrate(const Request& req) {
    if (!req.integrand)
        throw std::invalid_argument("adaptive_integrate: empty integrand");
    if (!std::isfinite(req.a) || !std::isfinite(req.b))
        throw std::invalid_argument("adaptive_integrate: endpoints must be finite");
    if (req.a > req.b)
        throw std::invalid_argument("adaptive_integrate: requires a <= b");
    if (!(req.tol > 0.0))
        throw std::invalid_argument("adaptive_integrate: tol must be positive");
    if (req.max_depth < 1 || req.min_depth < 0)
        throw std::invalid_argument("adaptive_integrate: bad depth limits");
    if (req.a == req.b)
        return {};

    Simpson s(req.integrand, req.max_depth, std::min(req.min_depth, req.max_depth));
    return s.run(req.a, req.b, req.tol);
}

Result integrate_halfline(const Integrand& f, int decay_order, double tol, int max_depth) {
    if (decay_order < 1)
        throw DomainError("integrate_halfline: decay_order must be >= 1");
    const double n = decay_order;
    // e^{-x^n/n} < 1e-320 beyond this point.
    const double cutoff = std::pow(n * 737.0, 1.0 / n);

    Integrand mapped = [&f, cutoff](double u) -> double {
        if (u >= 1.0)
            return 0.0;
        double one_minus = 1.0 - u;
        double x = u / one_minus;
        if (x > cutoff)
            return 0.0;
        return f(x) / (one_minus * one_minus);
    };
    Request req;
    req.integrand = mapped;
    req.a = 0.0;
    req.b = 1.0;
    req.tol = tol;
    req.max_depth = max_depth;
    req.min_depth = 6;
    return adaptive_integrate(req);
}

double gamma(double x) {
    if (std::isnan(x) || x <= 0.0)
        throw DomainError("gamma: argument must be positive, got " + std::to_string(x));
    double g = std::tgamma(x);
    if (!std::isfinite(g))
        throw OverflowError("gamma: result overflows double at x = " + std::to_string(x));
    return g;
}

} // namespace powexp::quadrature
