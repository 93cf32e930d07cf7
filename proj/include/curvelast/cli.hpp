#pragma once

#include "curvelast/config.hpp"

// Subcommand entry points. Exit codes: 0 ok, 1 config error, 2 bracket
// failure, >= 3 verification failures (capped at 125).

namespace curvelast {

int cmd_base_state(const RunConfig& cfg);
int cmd_dispersion(const RunConfig& cfg);
int cmd_bifurcation(const RunConfig& cfg);
int cmd_verify(bool json_report);

int run_cli(int argc, char** argv);

}  // namespace curvelast
