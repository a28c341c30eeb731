#pragma once

#include <string>

#include "qb/config.hpp"

namespace qb {

struct RunOutcome {
  // 0: all verdicts pass; 1: a verdict failed or a solver gave up;
  // 2: malformed input.
  int exit_code = 0;
  std::string summary;
};

// Executes the configured subcommand and writes its CSV and JSON artifacts
// (default names <subcommand>.csv / <subcommand>.json).  Every artifact
// carries a provenance block: config hash, library version, precision.
// Errors are mapped to the exit code; this never throws on qb errors.
RunOutcome run(const RunConfig& c);

}  // namespace qb
