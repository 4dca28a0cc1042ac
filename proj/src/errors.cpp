#include "fracplap/errors.hpp"

namespace fracplap {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::argument: return "argument";
    case ErrorCode::geometry: return "geometry";
    case ErrorCode::out_of_domain: return "out_of_domain";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::non_convergence: return "non_convergence";
    case ErrorCode::resolution: return "resolution";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::string out = "invalid configuration:";
  for (const auto& issue : issues) {
    out += "\n  " + issue.field + ": " + issue.message;
  }
  return out;
}

std::string first_field(const std::vector<ConfigIssue>& issues) {
  return issues.empty() ? std::string{} : issues.front().field;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(ErrorCode::config, first_field(issues), join_issues(issues)),
      issues_(std::move(issues)) {}

}  // namespace fracplap
