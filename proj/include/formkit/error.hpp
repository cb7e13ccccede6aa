#pragma once

#include <stdexcept>
#include <string>

namespace formkit {

/// Failure category. The CLI maps these onto its exit codes.
enum class ErrorKind {
  parse,         ///< malformed input document
  invariant,     ///< a value violates a type invariant
  precondition,  ///< an operation was called outside its contract
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_parse(const std::string& what) { throw Error(ErrorKind::parse, what); }

[[noreturn]] inline void throw_invariant(const std::string& what) {
  throw Error(ErrorKind::invariant, what);
}

[[noreturn]] inline void throw_precondition(const std::string& what) {
  throw Error(ErrorKind::precondition, what);
}

}  // namespace formkit
