#pragma once
// Command layer behind the CLI verbs. Each command reads inputs, never
// mutates them, writes any outputs under cfg.out_dir, and returns a process
// exit status (0 iff no error-severity diagnostic and the required outputs
// were produced). Output is deterministic given (inputs, config, seed).

#include <ostream>
#include <string>

#include "calign/fixtures.hpp"
#include "calign/report.hpp"

namespace calign {

int cmd_lint(const EngineConfig& cfg, std::ostream& out);
int cmd_apply_overrides(const EngineConfig& cfg, std::ostream& out);
int cmd_metrics(const EngineConfig& cfg, std::ostream& out);
int cmd_sensitivity(const EngineConfig& cfg, std::ostream& out);
int cmd_stats(const EngineConfig& cfg, std::ostream& out);
int cmd_worksheets(const EngineConfig& cfg, std::ostream& out);
int cmd_fixtures(const EngineConfig& cfg, FixtureProfile profile, int size, std::ostream& out);

}  // namespace calign
