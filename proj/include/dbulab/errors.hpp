#pragma once

#include <stdexcept>
#include <string>

namespace dbu {

// Invalid configuration or parameters outside a documented range.
class validation_error : public std::invalid_argument {
public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// Contract violation between modules (wrong representation, mismatched grids).
class contract_error : public std::logic_error {
public:
  explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// A quadrature or iteration failed to reach its tolerance.
class convergence_error : public std::runtime_error {
public:
  convergence_error(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

// Solution amplitude blew past the overflow guard.
class divergence_error : public std::runtime_error {
public:
  explicit divergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Refusing to run because the requested size exceeds the cost guard.
class cost_guard_error : public std::runtime_error {
public:
  explicit cost_guard_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dbu
