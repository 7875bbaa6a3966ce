#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace curate {

/// Base for every error the toolkit raises. `code()` is a stable
/// machine-readable name (used in JSON error bodies and CLI messages).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class LexiconError : public Error {
 public:
  LexiconError(std::size_t line, const std::string& reason)
      : Error("LexiconError", "line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NumberError : public Error {
  using Error::Error;
};

class SymbolError : public Error {
  using Error::Error;
};

class ConsensusError : public Error {
  using Error::Error;
};

class BackendError : public Error {
 public:
  explicit BackendError(const std::string& message) : Error("BackendUnavailable", message) {}
};

class ManifestError : public Error {
 public:
  ManifestError(std::size_t line, const std::string& reason)
      : Error("ParseError", "line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class EvalError : public Error {
  using Error::Error;
};

/// Review-store failures. ValidationFailed carries the individual reasons.
class ReviewError : public Error {
 public:
  ReviewError(std::string code, const std::string& message, std::vector<std::string> reasons = {})
      : Error(std::move(code), message), reasons_(std::move(reasons)) {}
  const std::vector<std::string>& reasons() const noexcept { return reasons_; }

 private:
  std::vector<std::string> reasons_;
};

}  // namespace curate
