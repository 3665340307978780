#pragma once

#include <stdexcept>
#include <string>

namespace symgen {

// Base for all library errors. `kind` is a stable machine-readable tag
// (e.g. "unknown-task", "retry-exhausted") used by the CLI error line.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

inline Error err(const std::string& kind, const std::string& what) {
  return Error(kind, kind + ": " + what);
}

// Generation exceeded its difficulty-scaled time budget.
class TimeoutError : public Error {
public:
  explicit TimeoutError(const std::string& what) : Error("timeout", what) {}
};

// Rejection sampling hit its retry cap.
class RetryExhausted : public Error {
public:
  explicit RetryExhausted(const std::string& what)
      : Error("retry-exhausted", what) {}
};

}  // namespace symgen
