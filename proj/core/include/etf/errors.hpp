#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace etf {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySourceError : public Error {
 public:
  EmptySourceError() : Error("source text is empty") {}
};

class EmptySummaryError : public Error {
 public:
  EmptySummaryError() : Error("summary text is empty") {}
};

/// A backend produced a response that could not be interpreted.
class MalformedBackendOutput : public Error {
 public:
  using Error::Error;
};

/// Transport-level failures raised by the model client. Every instance knows
/// which role issued the request and the request fingerprint.
class BackendError : public Error {
 public:
  BackendError(const std::string& what, std::string role, std::string fingerprint)
      : Error(what + " [role=" + role + " fingerprint=" + fingerprint + "]"),
        role_(std::move(role)),
        fingerprint_(std::move(fingerprint)) {}

  const std::string& role() const noexcept { return role_; }
  const std::string& fingerprint() const noexcept { return fingerprint_; }

 private:
  std::string role_;
  std::string fingerprint_;
};

class BackendUnavailable : public BackendError {
 public:
  using BackendError::BackendError;
};

class Unauthorized : public BackendError {
 public:
  using BackendError::BackendError;
};

class RateLimitedExhausted : public BackendError {
 public:
  using BackendError::BackendError;
};

class TimeoutError : public BackendError {
 public:
  using BackendError::BackendError;
};

/// Replay mode was asked for a response that is not in the fixture store.
class MissingFixture : public BackendError {
 public:
  using BackendError::BackendError;
};

class OracleMiss : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Raised while loading datasets; `line` is 1-based, 0 when not applicable.
class DatasetError : public Error {
 public:
  DatasetError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InvariantViolation : public DatasetError {
 public:
  InvariantViolation(std::size_t line, std::string rule)
      : DatasetError(line, "invariant violated: " + rule), rule_(std::move(rule)) {}
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string rule_;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace etf
