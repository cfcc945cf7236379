#pragma once

#include <stdexcept>
#include <string>

namespace heunracah {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A parameter hits a pole or leaves the admissible domain of a closed form.
class ParameterDomainError : public Error {
 public:
  using Error::Error;
};

class OracleError : public Error {
 public:
  using Error::Error;
};

class CanonicalizationError : public Error {
 public:
  using Error::Error;
};

/// Requested Bethe mode is inconsistent with the parameters (e.g. no integer p̄).
class ModeError : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace heunracah
