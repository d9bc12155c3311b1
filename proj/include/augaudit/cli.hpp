// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace augaudit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitLeaks = 3;

/*
 * Subcommands: ingest, augment, split, leakcheck, train, evaluate, audit,
 * report. Returns the process exit code; never calls exit().
 */
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace augaudit
