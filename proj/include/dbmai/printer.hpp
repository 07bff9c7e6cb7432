// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>

#include "dbmai/ast.hpp"

namespace dbmai {

std::string to_source(const Expr& e, std::span<const std::string> names);
std::string to_source(const Condition& c, std::span<const std::string> names);

/// Source text that parses back to an equal Program.
std::string to_source(const Program& p);

} // namespace dbmai
