#pragma once

#include <stdexcept>
#include <string>

namespace paxp {

// Root of every error raised by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Interchange document does not match the expected shape.
class SchemaError : public Error {
public:
  using Error::Error;
};

// Document is well-formed but violates a tree/instance invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

// An operation was called with inputs outside its contract.
class PreconditionError : public Error {
public:
  using Error::Error;
};

// External solver missing, timed out, answered unknown or produced an
// unusable model. Never used to report a definitive "unsat".
class BackendError : public Error {
public:
  using Error::Error;
};

class BudgetExceeded : public Error {
public:
  using Error::Error;
};

} // namespace paxp
