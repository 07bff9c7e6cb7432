// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>
#include <vector>

#include "dbmai/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dbmai::run_cli(args, std::cout, std::cerr);
}
