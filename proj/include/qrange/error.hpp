#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qrange {

enum class ErrorKind { input, precondition, internal };

/// Base of every exception thrown by the library. The kind decides the CLI
/// exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed or out-of-contract input (bad file, non-unit vector, bad permutation).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

/// A structural predicate required by a theorem-backed operation does not hold.
class PreconditionError : public Error {
 public:
  PreconditionError(std::string predicate, const std::string& what)
      : Error(ErrorKind::precondition, "precondition " + predicate + " failed: " + what),
        predicate_(std::move(predicate)) {}

  const std::string& predicate() const noexcept { return predicate_; }

 private:
  std::string predicate_;
};

/// Something that the mathematics says cannot happen did happen.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorKind::internal, what) {}
};

}  // namespace qrange
