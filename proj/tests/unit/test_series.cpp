#include "powexp/errors.hpp"
#include "powexp/quadrature.hpp"
#include "powexp/series.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace powexp;

namespace {

double integrand(double t, int n, Sign s) {
    const double u = std::pow(t, n);
    return std::exp(s == Sign::Pos ? u : -u);
}

double oracle(double a, double b, int n, Sign s) {
    if (a == b)
        return 0.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    quadrature::Request r;
    r.integrand = [n, s](double t) { return integrand(t, n, s); };
    r.a = lo;
    r.b = hi;
    r.tol = 1e-13 * std::max(1.0, integrand(lo, n, s) + integrand(hi, n, s));
    const double v = quadrature::adaptive_integrate(r).value;
    return a <= b ? v : -v;
}

TruncationPolicy tight() {
    TruncationPolicy p;
    p.rel_tol = 1e-12;
    return p;
}

} // namespace

TEST_CASE("TruncationPolicy validation") {
    TruncationPolicy p;
    CHECK_NOTHROW(p.validate());
    p.max_terms = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.rel_tol = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.abs_tol = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_THROWS_AS(bracket_series({1.0, 2, Sign::Neg}, p), std::invalid_argument);
}

TEST_CASE("bracket_series reference values") {
    const SeriesEval zero = bracket_series({0.0, 2, Sign::Pos});
    CHECK(zero.value == 0.0);
    CHECK(zero.terms_used == 1);

    CHECK(std::abs(bracket_series({1.0, 2, Sign::Neg}).value - 2.0300784692787050) <= 1e-14);
    CHECK(std::abs(bracket_series({1.0, 2, Sign::Pos}).value - 0.53807950691276842) <= 1e-14);

    CHECK_THROWS_AS(bracket_series({1.0, 0, Sign::Neg}), DomainError);
    CHECK_THROWS_AS(bracket_series({INFINITY, 2, Sign::Neg}), DomainError);
}

TEST_CASE("antiderivative reference values") {
    for (int n = 1; n <= 6; ++n) {
        CHECK(antiderivative({0.0, n, Sign::Pos}).value == 0.0);
        CHECK(antiderivative({0.0, n, Sign::Neg}).value == 0.0);
    }
    CHECK(std::abs(antiderivative({1.0, 2, Sign::Neg}).value - 0.74682413281242703) <= 1e-14);
    CHECK(std::abs(antiderivative({1.0, 2, Sign::Pos}).value - 1.4626517459071816) <= 1e-14);
    CHECK(std::abs(antiderivative({0.8, 3, Sign::Neg}).value - 0.71095262156054140) <= 1e-14);
    CHECK(std::abs(antiderivative({1.5, 5, Sign::Neg}).value - 0.91815057201138616) <= 1e-14);
}

TEST_CASE("antiderivative overflow contract") {
    // 2^6 = 64 > 45
    CHECK_THROWS_AS(antiderivative({2.0, 6, Sign::Pos}), OverflowError);
    CHECK_NOTHROW(antiderivative({1.8, 6, Sign::Pos}));
    // The decaying side is fine far out and approaches Gamma(1 + 1/n).
    const SeriesEval far = antiderivative({6.0, 2, Sign::Neg});
    CHECK(std::abs(far.value - 0.88622692545275801) <= 1e-12);
    const SeriesEval farther = antiderivative({40.0, 2, Sign::Neg});
    CHECK(std::abs(farther.value - 0.88622692545275801) <= 1e-12);
}

TEST_CASE("maclaurin_antiderivative") {
    CHECK(maclaurin_antiderivative({0.0, 3, Sign::Pos}).value == 0.0);
    CHECK(std::abs(maclaurin_antiderivative({1.0, 2, Sign::Neg}).value - 0.74682413281242703) <= 1e-14);
    CHECK(std::abs(maclaurin_antiderivative({0.5, 4, Sign::Pos}).value - 0.50636009083883687) <= 1e-14);
    CHECK_THROWS_AS(maclaurin_antiderivative({2.0, 6, Sign::Neg}), OverflowError);
}

TEST_CASE("form equivalence on |x| <= 2") {
    const TruncationPolicy p = tight();
    for (int n = 1; n <= 6; ++n) {
        for (Sign s : {Sign::Pos, Sign::Neg}) {
            for (int i = -20; i <= 20; ++i) {
                const double x = 0.1 * i;
                if (std::pow(std::abs(x), n) > kMaxExponent)
                    continue;
                const SeriesEval a = antiderivative({x, n, s}, p);
                const SeriesEval m = maclaurin_antiderivative({x, n, s}, p);
                const double tol = 10.0 * std::max(p.rel_tol * std::abs(a.value), p.abs_tol);
                INFO("n=" << n << " x=" << x << " sign=" << to_string(s));
                CHECK(std::abs(a.value - m.value) <= std::max(tol, 1e-13 * std::abs(a.value)));
            }
        }
    }
}

TEST_CASE("converged results honour the truncation bound") {
    const TruncationPolicy p = tight();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ux(-1.5, 1.5);
    std::uniform_int_distribution<int> un(1, 6);
    for (int i = 0; i < 200; ++i) {
        const SeriesQuery q{ux(rng), un(rng), i % 2 ? Sign::Pos : Sign::Neg};
        const SeriesEval b = bracket_series(q, p);
        CHECK(b.converged);
        CHECK(b.terms_used <= p.max_terms);
        CHECK(b.cancellation_index >= 1.0);
        CHECK(b.last_term_magnitude <= std::max(p.abs_tol, p.rel_tol * std::abs(b.value)));
    }
}

TEST_CASE("max_terms exhaustion is a flag, not an exception") {
    TruncationPolicy p;
    p.max_terms = 3;
    const SeriesEval b = bracket_series({1.4, 2, Sign::Neg}, p);
    CHECK_FALSE(b.converged);
    CHECK(b.terms_used == 3);
}

TEST_CASE("derivative check by centered differences") {
    const double h = 1e-4;
    for (int n = 1; n <= 6; ++n) {
        for (Sign s : {Sign::Pos, Sign::Neg}) {
            for (double x : {-1.0, -0.6, -0.1, 0.2, 0.7, 1.0}) {
                const double fd = (antiderivative({x + h, n, s}).value - antiderivative({x - h, n, s}).value) /
                                  (2 * h);
                INFO("n=" << n << " x=" << x);
                const double f = integrand(x, n, s);
                CHECK(std::abs(fd - f) <= 1e-6 * std::max(1.0, f));
            }
        }
    }
}

TEST_CASE("even_odd_split") {
    const EvenOddSplit s = even_odd_split(1.0, 2);
    CHECK(std::abs(s.g.value - 1.2840789880957367) <= 1e-14);
    CHECK(std::abs(s.f.value - 0.74599948118296828) <= 1e-14);

    const EvenOddSplit z = even_odd_split(0.0, 6);
    CHECK(z.g.value == 0.0);
    CHECK(z.f.value == 0.0);

    // Leading terms of g(1) at n = 2: 1 + 4/15 + 16/945.
    TruncationPolicy three;
    three.max_terms = 6; // r = 0..5 covers the three even terms
    const EvenOddSplit lead = even_odd_split(1.0, 2, three);
    CHECK(lead.g.value == doctest::Approx(1.0 + 4.0 / 15 + 16.0 / 945).epsilon(1e-15));

    const TruncationPolicy p = tight();
    for (int n = 1; n <= 6; ++n) {
        for (double x : {-1.4, -0.5, 0.3, 1.0, 1.5}) {
            const EvenOddSplit e = even_odd_split(x, n, p);
            const double bneg = bracket_series({x, n, Sign::Neg}, p).value;
            const double bpos = bracket_series({x, n, Sign::Pos}, p).value;
            INFO("n=" << n << " x=" << x);
            CHECK(std::abs(e.g.value + e.f.value - bneg) <= 1e-12 * std::max(1.0, std::abs(bneg)));
            CHECK(std::abs(e.g.value - e.f.value - bpos) <= 1e-12 * std::max(1.0, std::abs(e.g.value)));
        }
    }
}

TEST_CASE("coefficient_identity examples") {
    const CoefficientIdentity a = coefficient_identity(0, 5);
    CHECK(a.lhs == Rational(1));
    CHECK(a.equal);

    const CoefficientIdentity b = coefficient_identity(1, 3);
    CHECK(b.lhs == Rational(1, 4));
    CHECK(b.rhs == Rational(1, 4));

    const CoefficientIdentity c = coefficient_identity(2, 2);
    CHECK(c.lhs == Rational(1, 10));
    CHECK(c.equal);

    int exact = 0;
    for (int m = 0; m <= 12; ++m)
        for (int n = 1; n <= 10; ++n)
            exact += coefficient_identity(m, n).equal;
    CHECK(exact == 130);

    CHECK_THROWS_AS(coefficient_identity(-1, 2), DomainError);
    CHECK_THROWS_AS(coefficient_identity(2, 0), DomainError);
    CHECK_THROWS_AS(coefficient_identity(5000, 10), ArithmeticOverflow);
}

TEST_CASE("odd_reflection_check") {
    CHECK(odd_reflection_check(0.0, 3) == 0.0);
    CHECK(odd_reflection_check(0.8, 3, tight()) <= 1e-10);
    CHECK(odd_reflection_check(1.5, 5, tight()) <= 1e-10);
    CHECK(std::abs(antiderivative({-0.8, 3, Sign::Pos}).value + 0.71095262156054140) <= 1e-14);
    CHECK_THROWS_AS(odd_reflection_check(0.5, 4), DomainError);
}

TEST_CASE("convergence_domain table") {
    const ConvergenceDomain neg_even = convergence_domain(2, Sign::Neg);
    CHECK(neg_even.lower == LowerEnd::ClosedNegInf);
    CHECK(neg_even.upper == UpperEnd::ClosedPosInf);

    const ConvergenceDomain pos_odd = convergence_domain(3, Sign::Pos);
    CHECK(pos_odd.lower == LowerEnd::ClosedNegInf);
    CHECK(pos_odd.upper == UpperEnd::FiniteOnly);

    const ConvergenceDomain neg_odd = convergence_domain(3, Sign::Neg);
    CHECK(neg_odd.lower == LowerEnd::FiniteOnly);
    CHECK(neg_odd.upper == UpperEnd::ClosedPosInf);

    const ConvergenceDomain pos_even = convergence_domain(4, Sign::Pos);
    CHECK(pos_even.lower == LowerEnd::FiniteOnly);
    CHECK(pos_even.upper == UpperEnd::FiniteOnly);

    CHECK(neg_even.admits(-INFINITY));
    CHECK(neg_even.admits(INFINITY));
    CHECK(pos_odd.admits(-INFINITY));
    CHECK_FALSE(pos_odd.admits(INFINITY));
    CHECK(pos_even.admits(3.0));
    CHECK_THROWS_AS(convergence_domain(0, Sign::Pos), DomainError);
}

TEST_CASE("definite_integral") {
    CHECK(std::abs(definite_integral(-INFINITY, INFINITY, 2, Sign::Neg).value - 1.7724538509055160) <= 1e-14);
    CHECK(definite_integral(1.0, 1.0, 4, Sign::Neg).value == 0.0);
    CHECK(std::abs(definite_integral(0.0, INFINITY, 4, Sign::Neg).value - 0.90640247705547708) <= 1e-14);
    // Odd n: e^{x^3} is integrable on (-inf, 0].
    const double tail = definite_integral(-INFINITY, 0.0, 3, Sign::Pos).value;
    CHECK(std::abs(tail - quadrature::gamma(4.0 / 3.0)) <= 1e-14);

    CHECK_THROWS_AS(definite_integral(0.0, INFINITY, 2, Sign::Pos), DivergentIntegral);
    CHECK_THROWS_AS(definite_integral(-INFINITY, 0.0, 3, Sign::Neg), DivergentIntegral);
    CHECK_THROWS_AS(definite_integral(1.0, 0.0, 2, Sign::Neg), DomainError);
}

TEST_CASE("definite_integral matches quadrature on finite intervals") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ux(-1.5, 1.5);
    for (int n = 1; n <= 6; ++n) {
        for (Sign s : {Sign::Pos, Sign::Neg}) {
            for (int k = 0; k < 5; ++k) {
                double a = ux(rng), b = ux(rng);
                if (a > b)
                    std::swap(a, b);
                const double v = definite_integral(a, b, n, s, tight()).value;
                INFO("n=" << n << " [" << a << ", " << b << "]");
                CHECK(std::abs(v - oracle(a, b, n, s)) <= 1e-8);
            }
        }
    }
}

TEST_CASE("cancellation index grows with |x| for the alternating bracket") {
    for (int n = 1; n <= 6; ++n) {
        double prev = 0.0;
        for (int i = 0; i <= 15; ++i) {
            const double x = 0.1 * i;
            const double ci = bracket_series({x, n, Sign::Pos}).cancellation_index;
            INFO("n=" << n << " x=" << x);
            CHECK(ci >= prev);
            prev = ci;
        }
    }
}

TEST_CASE("to_string spellings") {
    CHECK(std::string(to_string(Sign::Pos)) == "pos");
    CHECK(std::string(to_string(LowerEnd::ClosedNegInf)) == "closed_neg_inf");
    CHECK(std::string(to_string(UpperEnd::FiniteOnly)) == "finite_only");
}
