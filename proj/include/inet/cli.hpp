#pragma once

// Command implementations behind the `inetc` executable. Every command writes
// to the given streams and returns the process exit status:
//   0 success, 1 semantic failure, 2 parse or I/O failure, 3 usage error.
// `run` additionally returns 1 on step limit, 2 on a rejected program and 3
// when the program has no net statement.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "inet/core.hpp"
#include "inet/eval.hpp"

namespace inet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSemantic = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitUsage = 3;

/// Canonical program text: one formatted rule per line, then the net (as its
/// canonical readback) if present.
std::string formatProgram(const std::vector<Rule>& rules, const std::optional<Net>& net);

/// Step limit used when none is given: INETC_MAX_STEPS if set to a positive
/// integer, otherwise kDefaultMaxSteps.
std::size_t defaultMaxSteps();

struct RunOptions {
  Mode mode = Mode::Orn;
  Strategy strategy;
  std::optional<std::size_t> maxSteps;
  bool trace = false;
};

int cmdCheck(const std::string& path, std::ostream& out, std::ostream& err);
int cmdCompile(const std::string& path, const std::string& outPath, std::ostream& out, std::ostream& err);
int cmdRun(const std::string& path, const RunOptions& options, std::ostream& out, std::ostream& err);

/// Parses the command line and dispatches to a command.
int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace inet
