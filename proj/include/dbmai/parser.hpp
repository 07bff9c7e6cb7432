// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "dbmai/ast.hpp"

namespace dbmai {

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line),
          column_(column) {}

    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }

  private:
    int line_;
    int column_;
};

/// Parses a whole program and resolves every identifier.
///
///   program := decl* init? process+
///   decl    := "var" ident ("," ident)* ";"
///   init    := "init" block
///   process := "process" ident block
///   block   := "{" stmt* "}"
///   stmt    := ident "=" expr ";" | "if" cond block ("else" block)?
///            | "while" cond block | "skip" ";" | "assert" "(" cond ")" ";"
///   cond    := "true" | "false" | atom | cond "and" cond | cond "or" cond
///            | "not" cond | "(" cond ")"
///   atom    := expr ("<" | "<=" | "==" | "!=" | ">=" | ">") expr
///   expr    := integer | ident | "-" expr | expr ("+" | "-" | "*") expr | "(" expr ")"
///
/// `//` starts a comment running to the end of the line.
Program parse_program(std::string_view text);

} // namespace dbmai
