#pragma once

#include <string>

#include "defdyn/json_io.hpp"

namespace defdyn {

  inline constexpr char const* kToolName      = "defdyn";
  inline constexpr char const* kToolVersion   = "1.0.0";
  inline constexpr int         kSchemaVersion = 1;

  inline constexpr int kExitOk          = 0;
  inline constexpr int kExitSchemaError = 2;
  inline constexpr int kExitTaskError   = 3;

  struct RunOptions {
    bool with_oracle = false;
  };

  struct RunOutcome {
    Json report;
    int  exit_code = kExitOk;
  };

  // Runs every task in order. Schema problems stop the run (exit 2); a task
  // that raises a library error is reported and the run continues (exit 3,
  // report flagged partial).
  RunOutcome run_scenario(Json const& scenario, RunOptions const& options = {});
  // Parses JSON text first; malformed JSON is a schema error.
  RunOutcome run_scenario_text(std::string const& text, RunOptions const& options = {});

  // The task catalog: names, parameter schemas, one-line descriptions.
  Json list_capabilities();

  // Human-readable rendering of a report.
  std::string render_text(Json const& report);

  // The report without timing fields, for determinism comparisons.
  Json strip_timings(Json report);

}  // namespace defdyn
