#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cohgram {

// Base class for all library errors so callers can catch them in one place.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Misuse of an operation (bad permutation, invalid centering vector, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// A matrix entry with |value| <= tol_zero where a nonzero overlap is required.
class ZeroEntryError : public Error {
public:
    ZeroEntryError(std::int64_t i, std::int64_t j)
        : Error("zero entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")"),
          row(i), col(j) {}
    std::int64_t row;
    std::int64_t col;
};

// An eigenvalue below -tol_eig where positive semidefiniteness is required.
class NotPsdError : public Error {
public:
    explicit NotPsdError(double lambda_min)
        : Error("matrix not positive semidefinite (lambda_min = " +
                std::to_string(lambda_min) + ")"),
          lambda_min(lambda_min) {}
    double lambda_min;
};

class NotEdmError : public Error {
public:
    explicit NotEdmError(double lambda_min)
        : Error("matrix fails the distance-matrix test (lambda_min = " +
                std::to_string(lambda_min) + ")"),
          lambda_min(lambda_min) {}
    double lambda_min;
};

class NotRealPositiveError : public Error {
public:
    using Error::Error;
};

// The integer-matrix search space exceeds the caller's budget; the decision
// is not attempted.
class BudgetExceededError : public Error {
public:
    BudgetExceededError(double theoretical, std::uint64_t budget)
        : Error("candidate count " + std::to_string(theoretical) +
                " exceeds budget " + std::to_string(budget)),
          theoretical(theoretical), budget(budget) {}
    double theoretical;
    std::uint64_t budget;
};

// Malformed input document (serialization layer).
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace cohgram
