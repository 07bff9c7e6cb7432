// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "dbmai/condition.hpp"
#include "dbmai/expr.hpp"

namespace dbmai {

struct Stmt;
using Block = std::vector<Stmt>;

// Line numbers are diagnostics only and take no part in equality.

struct AssignStmt {
    std::size_t var;
    Expr value;
    int line = 0;

    friend bool operator==(const AssignStmt& a, const AssignStmt& b) { return a.var == b.var && a.value == b.value; }
};

struct IfStmt {
    Condition cond;
    Block then_branch;
    Block else_branch;
    int line = 0;

    friend bool operator==(const IfStmt& a, const IfStmt& b);
};

struct WhileStmt {
    Condition cond;
    Block body;
    int line = 0;

    friend bool operator==(const WhileStmt& a, const WhileStmt& b);
};

struct SkipStmt {
    int line = 0;

    friend bool operator==(const SkipStmt& /*a*/, const SkipStmt& /*b*/) { return true; }
};

struct AssertStmt {
    Condition cond;
    int line = 0;

    friend bool operator==(const AssertStmt& a, const AssertStmt& b) { return a.cond == b.cond; }
};

struct Stmt {
    std::variant<AssignStmt, IfStmt, WhileStmt, SkipStmt, AssertStmt> node;

    friend bool operator==(const Stmt&, const Stmt&) = default;
};

inline bool operator==(const IfStmt& a, const IfStmt& b) {
    return a.cond == b.cond && a.then_branch == b.then_branch && a.else_branch == b.else_branch;
}

inline bool operator==(const WhileStmt& a, const WhileStmt& b) { return a.cond == b.cond && a.body == b.body; }

struct Process {
    std::string name;
    Block body;

    friend bool operator==(const Process&, const Process&) = default;
};

/// Variables are global and shared by every process. names[0] is the
/// reserved zero node and never appears in source text.
struct Program {
    std::vector<std::string> names{""};
    Block init;
    std::vector<Process> processes;

    /// Node count of the DBMs over this program's variables.
    [[nodiscard]] std::size_t dim() const { return names.size(); }

    friend bool operator==(const Program&, const Program&) = default;
};

} // namespace dbmai
