#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

// Argument outside the domain of a model formula (|z| past the validity
// disk, a stencil leaving it, a violated precondition on m or R).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Evaluation at the logarithmic pole of the weight function.
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

class QuadratureFailure : public std::runtime_error {
public:
  QuadratureFailure(const std::string& what, double best_estimate, double abs_err)
      : std::runtime_error(what), best_estimate_(best_estimate), abs_err_(abs_err) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double abs_err() const noexcept { return abs_err_; }

private:
  double best_estimate_;
  double abs_err_;
};

class NotPositiveDefinite : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SingularSchurComplement : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace bergman
