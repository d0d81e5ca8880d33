#pragma once

#include <stdexcept>
#include <string>

namespace hyperfem
{

struct Error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct SingularTensor : Error
{
  using Error::Error;
};

/// A primitive (log, sqrt, pow) was evaluated outside its domain.
struct DomainError : Error
{
  using Error::Error;
};

/// det F <= 0 somewhere; for Newton this means the step was too large.
struct NonPositiveJacobian : Error
{
  using Error::Error;
};

struct UnsupportedOrder : Error
{
  using Error::Error;
};

struct StateNotPrepared : Error
{
  using Error::Error;
};

struct MaxIterations : Error
{
  MaxIterations(const std::string& what, int iterations_)
    : Error(what), iterations(iterations_)
  {}
  int iterations;
};

struct NewtonDiverged : Error
{
  using Error::Error;
};

/// Two tangent strategies disagreed on the same input.
struct EquivalenceFailure : Error
{
  using Error::Error;
};

struct ConfigError : Error
{
  using Error::Error;
};

struct IoError : Error
{
  using Error::Error;
};

} // namespace hyperfem
