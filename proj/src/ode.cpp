#include "powexp/ode.hpp"

#include "powexp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace powexp {

namespace {

void require_order(int n, const char* who) {
    if (n < 1)
        throw DomainError(std::string(who) + ": n must be >= 1, got " + std::to_string(n));
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

// One running sum of the three term-wise series.
struct Component {
    double sum = 0.0;
    double prev = std::numeric_limits<double>::infinity();

    bool settled(double term, const TruncationPolicy& p) const {
        double mag = std::abs(term);
        if (mag == 0.0)
            return true;
        return mag < std::max(p.abs_tol, p.rel_tol * std::abs(sum)) && mag < prev;
    }
    void add(double term) {
        sum += term;
        prev = std::abs(term);
    }
};

struct Homogeneous {
    double y, dy, d2y;
};

// k1 e^u + k2 e^{-u} with u = x^n and its analytic derivatives.
Homogeneous complementary(double x, int n, double k1, double k2) {
    if (k1 == 0.0 && k2 == 0.0)
        return {0.0, 0.0, 0.0};
    const double u = ipow(x, n);
    const double ep = k1 == 0.0 ? 0.0 : k1 * std::exp(u);
    const double em = k2 == 0.0 ? 0.0 : k2 * std::exp(-u);
    const double du = n * ipow(x, n - 1);
    // (n-1) x^{n-2}, written so that n = 1 never forms 1/x.
    const double d2u = n == 1 ? 0.0 : n * (n - 1) * ipow(x, n - 2);
    return {ep + em, du * (ep - em), d2u * (ep - em) + du * du * (ep + em)};
}

double rhs(Equation eq, double x, int n) {
    return eq == Equation::Eq13 ? n * ipow(x, n - 1) : -(n - 1) / x;
}

struct Applied {
    double value; // y'' - ((n-1)/x) y' - n^2 x^{2n-2} y
    double scale; // sum of the magnitudes of those three terms
};

Applied apply_operator(double x, int n, double y, double dy, double d2y) {
    const double xn1 = ipow(x, n - 1);
    const double a = ((n - 1) / x) * dy;
    const double b = static_cast<double>(n) * n * xn1 * xn1 * y;
    return {d2y - a - b, std::abs(d2y) + std::abs(a) + std::abs(b)};
}

} // namespace

const char* to_string(Series s) { return s == Series::F ? "f" : "g"; }

const char* to_string(Equation e) { return e == Equation::Eq13 ? "13" : "14"; }

ParticularEval particular_eval(Series which, double x, int n, const TruncationPolicy& p) {
    require_order(n, "particular_eval");
    if (!std::isfinite(x))
        throw DomainError("particular_eval: x must be finite");
    p.validate();

    // a_r = n^r x^{nr} / prod_{p=0}^{r} (1+pn); term r of the series is
    // a_r x, its derivative a_r (1+nr), and its second derivative
    // n^2 r a_{r-1} x^{n-1}.
    const double xn = ipow(x, n);
    const double xn1 = ipow(x, n - 1);
    const int start = which == Series::G ? 0 : 1;

    Component y, dy, d2y;
    ParticularEval out;
    out.converged = false;
    double a_prev = 0.0;
    double a = 1.0;
    for (int r = 0;; ++r) {
        if (r > 0) {
            a_prev = a;
            a = a * n * xn / (1.0 + static_cast<double>(r) * n);
        }
        if ((r - start) % 2 != 0 || r < start)
            continue;
        const double ty = a * x;
        const double tdy = a * (1.0 + static_cast<double>(r) * n);
        const double td2y = static_cast<double>(n) * n * r * a_prev * xn1;
        if (!std::isfinite(ty) || !std::isfinite(tdy) || !std::isfinite(td2y))
            throw OverflowError("particular_eval: series terms overflow double");

        const bool stop =
            out.terms_used >= 1 && y.settled(ty, p) && dy.settled(tdy, p) && d2y.settled(td2y, p);
        y.add(ty);
        dy.add(tdy);
        d2y.add(td2y);
        ++out.terms_used;
        out.last_term_magnitude = std::abs(ty);
        if (stop) {
            out.converged = true;
            break;
        }
        if (out.terms_used >= p.max_terms)
            break;
    }
    out.y = y.sum;
    out.dy = dy.sum;
    out.d2y = d2y.sum;
    return out;
}

ResidualReport residual(const OdeProblem& prob, const SolutionSpec& spec, std::span<const double> grid) {
    require_order(prob.n, "residual");
    spec.truncation.validate();
    const int n = prob.n;

    ResidualReport report;
    report.grid.assign(grid.begin(), grid.end());
    report.residuals.reserve(grid.size());
    for (double x : grid) {
        if (x == 0.0)
            throw GridContainsZero("residual: grid contains x = 0");
        if (!std::isfinite(x))
            throw DomainError("residual: grid points must be finite");
        if (spec.k1 != 0.0 && ipow(std::abs(x), n) > kMaxExponent)
            throw OverflowError("residual: x^n exceeds " + std::to_string(kMaxExponent) +
                                " with k1 != 0");

        // The operator is linear, so the complementary part and the
        // particular part are evaluated separately and added.
        const Homogeneous h = complementary(x, n, spec.k1, spec.k2);
        const Applied ah = apply_operator(x, n, h.y, h.dy, h.d2y);
        double r = ah.value;
        double scale = ah.scale;
        if (spec.particular) {
            const ParticularEval pe = particular_eval(*spec.particular, x, n, spec.truncation);
            const Applied ap = apply_operator(x, n, pe.y, pe.dy, pe.d2y);
            const double f = rhs(prob.which, x, n);
            r += ap.value - f;
            scale += ap.scale + std::abs(f);
            report.max_terms_used = std::max(report.max_terms_used, pe.terms_used);
            report.converged = report.converged && pe.converged;
        }
        report.residuals.push_back(r);
        report.max_abs_residual = std::max(report.max_abs_residual, std::abs(r));
        if (scale > 0.0)
            report.max_rel_residual = std::max(report.max_rel_residual, std::abs(r) / scale);
    }
    return report;
}

CoupledDefects coupled_relations_check(double x, int n, const TruncationPolicy& p) {
    const ParticularEval f = particular_eval(Series::F, x, n, p);
    const ParticularEval g = particular_eval(Series::G, x, n, p);
    const double c = n * ipow(x, n - 1);
    CoupledDefects out;
    out.defect_a = std::abs(g.dy - c * f.y - 1.0);
    out.defect_b = std::abs(f.dy - c * g.y);
    out.swapped_a = std::abs(f.dy - c * g.y - 1.0);
    out.swapped_b = std::abs(g.dy - c * f.y);
    out.converged = f.converged && g.converged;
    return out;
}

Defect decomposition_check(double x, int n, Sign sign, const TruncationPolicy& p) {
    const ParticularEval f = particular_eval(Series::F, x, n, p);
    const ParticularEval g = particular_eval(Series::G, x, n, p);
    const double c = n * ipow(x, n - 1);
    Defect out;
    out.converged = f.converged && g.converged;
    if (sign == Sign::Pos)
        out.value = std::abs((g.dy - f.dy) + (g.y - f.y) * c - 1.0);
    else
        out.value = std::abs((f.dy + g.dy) - (f.y + g.y) * c - 1.0);
    return out;
}

PairingAudit pairing_audit(int n, std::span<const double> grid, const TruncationPolicy& p) {
    require_order(n, "pairing_audit");
    for (double x : grid)
        if (!(x > 0.0 && x <= 1.5))
            throw std::invalid_argument("pairing_audit: grid points must lie in (0, 1.5]");

    PairingAudit audit;
    audit.n = n;
    for (Series s : {Series::F, Series::G}) {
        for (Equation e : {Equation::Eq13, Equation::Eq14}) {
            SolutionSpec spec;
            spec.particular = s;
            spec.truncation = p;
            const ResidualReport rep = residual({n, e}, spec, grid);
            const bool vanishes = rep.max_rel_residual <= kPairingThreshold;
            audit.entries.push_back({s, e, rep.max_abs_residual, rep.max_rel_residual, vanishes});
            if (vanishes)
                (s == Series::F ? audit.f_solves : audit.g_solves) = e;
        }
    }
    return audit;
}

} // namespace powexp
