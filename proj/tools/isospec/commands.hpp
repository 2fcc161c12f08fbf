#pragma once

#include "config.hpp"

namespace isospec::cli {

// Exit codes: 0 = all verdicts ok, 2 = verdict failure, 1 = usage/config
// error (raised as ConfigError by callers).
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerdict = 2;

int cmd_invariants(const Config& cfg);
int cmd_spectrum(const Config& cfg);
int cmd_verify(const Config& cfg);
int cmd_bump(const Config& cfg);

}  // namespace isospec::cli
