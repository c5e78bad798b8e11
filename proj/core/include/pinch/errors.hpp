#pragma once

#include <stdexcept>
#include <string>

namespace pinch {

/// Base class for every failure raised by the library. `stage()` names the
/// pipeline step that produced it so certificates can report where a run
/// broke.
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double worst_residual)
      : Error("roots", what), worst_residual_(worst_residual) {}

  double worst_residual() const noexcept { return worst_residual_; }

 private:
  double worst_residual_;
};

/// A negative real eigenvalue has no real logarithm, so no real generator
/// exponentiates to it.
class Unrepresentable : public Error {
 public:
  using Error::Error;
};

class ConjugationFailure : public Error {
 public:
  ConjugationFailure(const std::string& what, double residual, double condition)
      : Error("conjugator", what), residual_(residual), condition_(condition) {}

  double residual() const noexcept { return residual_; }
  double condition() const noexcept { return condition_; }

 private:
  double residual_;
  double condition_;
};

}  // namespace pinch
