#pragma once

#include "powexp/series.hpp"

#include <optional>
#include <span>
#include <vector>

namespace powexp {

/// The two halves of the non-alternating bracket series
/// sum_r n^r x^{1+nr} / prod_{p=0}^{r} (1+pn): G keeps even r, F odd r.
enum class Series { F, G };

/// Eq13: x y'' - (n-1) y' - n^2 x^{2n-1} y - n x^n = 0
/// Eq14: x y'' - (n-1) y' - n^2 x^{2n-1} y + (n-1) = 0
enum class Equation { Eq13, Eq14 };

const char* to_string(Series s);
const char* to_string(Equation e);

struct ParticularEval {
    double y = 0.0;
    double dy = 0.0;
    double d2y = 0.0;
    int terms_used = 0;
    double last_term_magnitude = 0.0;
    bool converged = true;
};

/// Value and first two derivatives of f or g, each differentiated term by
/// term. All three sums stop together, once each meets the truncation rule.
/// DomainError for n < 1 or non-finite x.
ParticularEval particular_eval(Series which, double x, int n, const TruncationPolicy& p = {});

struct OdeProblem {
    int n = 1;
    Equation which = Equation::Eq13;
};

struct SolutionSpec {
    double k1 = 0.0;
    double k2 = 0.0;
    /// Empty: only the complementary function k1 e^{x^n} + k2 e^{-x^n} is
    /// checked, against the homogeneous equation (no right-hand side).
    std::optional<Series> particular = Series::F;
    TruncationPolicy truncation{};
};

struct ResidualReport {
    std::vector<double> grid;
    std::vector<double> residuals;
    double max_abs_residual = 0.0;
    // |residual| over the summed magnitudes of the terms that produced it;
    // comparable across points where e^{x^n} and x^{2n-2} grow large.
    double max_rel_residual = 0.0;
    int max_terms_used = 0;
    bool converged = true;
};

/// Pointwise residual of y = k1 e^{x^n} + k2 e^{-x^n} + particular in the
/// normalized form y'' - ((n-1)/x) y' - n^2 x^{2n-2} y - RHS, where RHS is
/// n x^{n-1} for Eq13 and -(n-1)/x for Eq14.
/// GridContainsZero for x = 0; OverflowError when k1 != 0 and x^n exceeds
/// kMaxExponent; DomainError for n < 1.
ResidualReport residual(const OdeProblem& prob, const SolutionSpec& spec, std::span<const double> grid);

struct CoupledDefects {
    double defect_a = 0.0; // |g' - n x^{n-1} f - 1|
    double defect_b = 0.0; // |f' - n x^{n-1} g|
    // The same relations with f and g interchanged.
    double swapped_a = 0.0; // |f' - n x^{n-1} g - 1|
    double swapped_b = 0.0; // |g' - n x^{n-1} f|
    bool converged = true;
};

CoupledDefects coupled_relations_check(double x, int n, const TruncationPolicy& p = {});

struct Defect {
    double value = 0.0;
    bool converged = true;
};

/// Pos: |(g' - f') + (g - f) n x^{n-1} - 1|, the derivative of e^{x^n}(g - f).
/// Neg: |(f' + g') - (f + g) n x^{n-1} - 1|, the derivative of e^{-x^n}(f + g).
Defect decomposition_check(double x, int n, Sign sign, const TruncationPolicy& p = {});

struct PairingEntry {
    Series series;
    Equation equation;
    double max_abs_residual;
    double max_rel_residual;
    bool vanishes;
};

struct PairingAudit {
    int n = 1;
    std::vector<PairingEntry> entries; // all four pairings
    std::optional<Equation> f_solves;
    std::optional<Equation> g_solves;
};

inline constexpr double kPairingThreshold = 1e-8;

/// Residual of every (series, equation) pairing with k1 = k2 = 0. A pairing
/// vanishes when its max relative residual is at most kPairingThreshold.
/// std::invalid_argument unless every grid point lies in (0, 1.5].
PairingAudit pairing_audit(int n, std::span<const double> grid, const TruncationPolicy& p = {});

} // namespace powexp
