#pragma once

#include <string>

#include "config.hpp"

namespace gptlab::cli {

// Exit codes beyond 0: 1 library error, 2 bad configuration, 3 a checked
// property failed, 4 I/O failure.
inline constexpr int kExitCheckFailed = 3;

struct CommandOutput {
  std::string text;  // header line followed by CSV or JSON
  int status = 0;
  std::string failure;  // why status is non-zero
};

std::string header_line(const std::string& command);

CommandOutput run_gamma_table(const RunConfig& c);
CommandOutput run_incompat_scan(const RunConfig& c);
CommandOutput run_mixing_sweep(const RunConfig& c);
CommandOutput run_mur_properties(const RunConfig& c);

CommandOutput run_command(const RunConfig& c);

}  // namespace gptlab::cli
