#pragma once

#include <stdexcept>
#include <string>

namespace powexp {

/// Argument outside the mathematical domain of an operation (odd n where an
/// even order is required, n < 1, non-positive gamma argument, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An improper integral endpoint lies outside the convergence domain.
class DivergentIntegral : public DomainError {
public:
    using DomainError::DomainError;
};

/// e^{x^n} leaves the guaranteed working range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Exact integer/rational arithmetic exceeded its configured capacity.
class ArithmeticOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class MissingMoment : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ZeroDenominator : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EmptyData : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class GridContainsZero : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace powexp
