#pragma once

#include <stdexcept>
#include <string>

namespace h2tep {

// Base of every error thrown by the toolkit. The CLI maps the concrete type
// to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (JSON case, plan file, MPS).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A cross-reference (bus id, candidate id, route id) that does not resolve.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

// Profile tensor dimensions disagree with the planning horizon.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Operation called on input that breaks its contract (invalid case,
// inconsistent plan, enumeration cap exceeded, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Numerical trouble inside the LP/MILP solver or an unexpected solver status.
class SolverError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace h2tep
