#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracplap/config.hpp"
#include "fracplap/regularity.hpp"

namespace fracplap {

enum class Command { solve, norms, diagnose, iterate, check_exponent };

struct IterateArgs {
  DeGiorgiParams params;
  int j_max = 10;
};

struct CheckExponentArgs {
  /// Empty: use the configured field.
  std::string preset;
};

/// Runs one subcommand against a validated configuration, writing artifacts
/// under config.out_dir and a summary to `out`. Returns 0 when every hard
/// assertion passes and 2 otherwise; module errors propagate as exceptions.
int run_suite(Command command, const RunConfig& config, std::ostream& out,
              const IterateArgs& iterate = {}, const CheckExponentArgs& check = {});

/// Entry point of the command-line tool. Errors are written to `err` as a
/// JSON object and mapped to exit status 1.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fracplap
