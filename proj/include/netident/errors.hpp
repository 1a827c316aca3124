#pragma once

#include <stdexcept>
#include <string>

namespace netident {

// Malformed or out-of-range input. The CLI maps these to exit status 2.
class InputError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

// A well-formed request that the mathematics refuses. The CLI maps these to exit status 1.
class DomainError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public DomainError {
   public:
    using DomainError::DomainError;
};

// Singular (sI - X) and similar numerical breakdowns.
class ArithmeticError : public DomainError {
   public:
    using DomainError::DomainError;
};

class UncertifiedTargetError : public DomainError {
   public:
    using DomainError::DomainError;
};

class DegeneracyError : public DomainError {
   public:
    using DomainError::DomainError;
};

class InconsistencyError : public DomainError {
   public:
    using DomainError::DomainError;
};

class InsufficientDataError : public DomainError {
   public:
    InsufficientDataError(const std::string& what, int required_order)
        : DomainError(what), required_order_(required_order) {}

    int required_order() const noexcept { return required_order_; }

   private:
    int required_order_;
};

class DeconvolutionBlockedError : public DomainError {
   public:
    DeconvolutionBlockedError(const std::string& what, int order) : DomainError(what), order_(order) {}

    // First order k at which C (EK)^k B vanished.
    int order() const noexcept { return order_; }

   private:
    int order_;
};

}  // namespace netident
