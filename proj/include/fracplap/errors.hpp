#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fracplap {

/// Machine-readable error category, mirrored in the CLI's error JSON `code`.
enum class ErrorCode {
  argument,
  geometry,
  out_of_domain,
  divergence,
  non_convergence,
  resolution,
  config,
  io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string field, const std::string& message)
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

struct ArgumentError : Error {
  explicit ArgumentError(const std::string& message, std::string field = {})
      : Error(ErrorCode::argument, std::move(field), message) {}
};

struct GeometryError : Error {
  explicit GeometryError(const std::string& message, std::string field = {})
      : Error(ErrorCode::geometry, std::move(field), message) {}
};

struct OutOfDomainError : Error {
  explicit OutOfDomainError(const std::string& message)
      : Error(ErrorCode::out_of_domain, "", message) {}
};

struct DivergenceError : Error {
  explicit DivergenceError(const std::string& message)
      : Error(ErrorCode::divergence, "", message) {}
};

struct ResolutionError : Error {
  explicit ResolutionError(const std::string& message)
      : Error(ErrorCode::resolution, "", message) {}
};

struct IoError : Error {
  explicit IoError(const std::string& message, std::string path = {})
      : Error(ErrorCode::io, std::move(path), message) {}
};

/// One problem found while validating a configuration file.
struct ConfigIssue {
  std::string field;  // "section.key"
  std::string message;
};

/// All configuration problems, reported together.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

}  // namespace fracplap
