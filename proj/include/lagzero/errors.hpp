#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace lagzero {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};
struct BranchCutError : DomainError {
  using DomainError::DomainError;
};
struct OnBoundary : DomainError {
  using DomainError::DomainError;
};
struct PlanError : DomainError {
  using DomainError::DomainError;
};

struct QuadratureError : Error {
  QuadratureError(const std::string& what, double achieved)
      : Error(what + " (achieved " + sci(achieved) + ")"), achieved_tol(achieved) {}
  double achieved_tol;
};

struct NonConvergence : Error {
  NonConvergence(const std::string& what, long iters, double worst)
      : Error(what + " after " + std::to_string(iters) + " iterations, worst residual " +
              sci(worst)),
        iterations(iters),
        worst_residual(worst) {}
  long iterations;
  double worst_residual;
};

struct BracketError : Error {
  using Error::Error;
};
struct ClosureError : Error {
  using Error::Error;
};
struct StepCollapse : ClosureError {
  using ClosureError::ClosureError;
};

}  // namespace lagzero
