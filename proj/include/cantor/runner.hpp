#ifndef CANTOR_RUNNER_HPP
#define CANTOR_RUNNER_HPP

#include <optional>
#include <string>

#include "cantor/config.hpp"

namespace cantor {

// Exit statuses of a run: 0 check passed or certificate produced, 1 property
// violated with witness, 2 inconclusive up to bounds, 3 input error.
enum ExitStatus : int {
  kExitPassed = 0,
  kExitViolated = 1,
  kExitInconclusive = 2,
  kExitInputError = 3,
};

struct RunOutcome {
  int exit_code = kExitPassed;
  std::string report;  // human-readable, deterministic
  std::optional<std::string> artifact_name;
  std::optional<std::string> artifact_text;  // machine-readable record
};

// Executes the configured command.  Throws nothing; input errors come back
// as exit code 3 with the message in the report.
RunOutcome run(const RunConfig& cfg);

// Re-checks a serialized artifact against the config's models.
RunOutcome run_verify(const RunConfig& cfg, const std::string& artifact_text);

}  // namespace cantor

#endif
