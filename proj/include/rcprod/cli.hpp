#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rcprod/common.hpp"

namespace rcprod::cli {

enum ExitCode { kOk = 0, kViolated = 1, kUsage = 2, kUndecided = 3 };

class UsageError : public Error {
 public:
  using Error::Error;
};

struct CommandPlan {
  std::string command;  // field-info | rayclass | primes | sieve-check | analytic-check | verify
  std::string kind;     // verify experiment
  std::string field;
  std::string modulus = "(1)";
  std::optional<i64> gen_bound;
  i64 xmax = 1000;
  bool include_ramified = false;
  i64 z = 5;
  std::string alpha = "0";
  int n = 2;
  std::vector<i64> xs;
  std::optional<std::string> cls;
  i64 powers_xmax = 1000000;
  i64 reciprocal_xmax = 10000000;
  int runs = 200;

  std::string format = "json";
  std::optional<std::string> out;
  int threads = 1;
  u64 seed = 0;
  bool timing = false;
  std::optional<u64> factor_cap;
  bool inject_violation = false;
  bool help = false;
  std::string help_text;
};

/// Throws UsageError on unknown commands or flags and ValidationError on invalid specs.
CommandPlan parse_args(const std::vector<std::string>& args);

/// Runs the plan, writing the report to plan.out or `out`.
int execute(const CommandPlan& plan, std::ostream& out, std::ostream& err);

/// parse_args + execute with every error mapped to its exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string usage();

}  // namespace rcprod::cli
