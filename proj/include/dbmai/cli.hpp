// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dbmai {

/// Exit codes of the command-line driver.
enum ExitCode : int {
    exit_proved = 0,     // analysis ran, every assertion proved
    exit_unproved = 1,   // analysis ran, some assertion unknown (or a comparison violation)
    exit_usage = 2,      // bad flags, unreadable input, syntax error
    exit_overflow = 3,   // fixed-width coefficient overflow during analysis
};

/// `args` excludes the program name, e.g. {"analyze", "bakery.toy", "--format", "json"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dbmai
