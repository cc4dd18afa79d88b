#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "phasedet/io.hpp"

namespace phasedet {

enum class CheckStatus { Pass, Fail, Unverified };

struct CheckLine {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;

  /// "name STATUS (detail)".
  std::string text() const;
};

struct VerifyReport {
  std::vector<CheckLine> lines;
  /// 0 all pass, 1 some failure, 2 nothing failed but something was skipped.
  int exit_code() const;
};

/// Runs the checks that apply to a stored scheme file.
VerifyReport verify_scheme(const Json& file, std::uint64_t budget = kDefaultExhaustionBudget);

/// Entry point of the command-line tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phasedet
