#ifndef PLQ_ERRORS_HPP
#define PLQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plq {

// Base class of everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (JSON, label string). Carries the offending
// field when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg, std::string field = {})
      : Error(msg), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Requested dense object exceeds the configured qubit caps.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Pauli-Lindblad parameters do not exist: some Pauli eigenvalue vanishes.
// Such channels are limit points of the PL family; the caller must decide
// how (or whether) to regularize.
class IllDefinedError : public Error {
 public:
  using Error::Error;
};

// The principal-branch channel logarithm is unavailable, so no Markovianity
// verdict can be given. Never silently mapped to a yes/no answer.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

// Least-squares system does not determine the requested parameters.
class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace plq

#endif
