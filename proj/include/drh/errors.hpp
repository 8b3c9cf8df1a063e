#pragma once

#include <stdexcept>
#include <string>

namespace drh {

/// Input outside the mathematical domain of an operation (poles, divergent
/// exponent regimes, strip violations).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical route could not certify the requested accuracy.
class PrecisionLoss : public std::runtime_error {
public:
    PrecisionLoss(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Monte-Carlo budget exhausted before the requested standard error.
class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted(const std::string& what, double rel_stderr)
        : std::runtime_error(what), rel_stderr_(rel_stderr) {}
    double rel_stderr() const noexcept { return rel_stderr_; }

private:
    double rel_stderr_;
};

class UnsupportedSpace : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inverse transform requested before the inversion constant was calibrated.
class Uncalibrated : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A test function does not belong to the function class a check requires.
class ClassMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace drh
