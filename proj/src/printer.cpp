// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dbmai/printer.hpp"

#include <sstream>

#include "dbmai/constraints.hpp"

namespace dbmai {

namespace {

int precedence(const Expr& e) {
    switch (e.op()) {
    case Expr::Op::add:
    case Expr::Op::subtract: return 1;
    case Expr::Op::multiply: return 2;
    case Expr::Op::negate: return 3;
    default: return 4;
    }
}

int precedence(const Condition& c) {
    switch (c.kind()) {
    case Condition::Kind::disjunction: return 1;
    case Condition::Kind::conjunction: return 2;
    case Condition::Kind::negation: return 3;
    default: return 4;
    }
}

std::string wrap(const std::string& s, bool parens) { return parens ? "(" + s + ")" : s; }

void indent(std::ostringstream& os, int depth) {
    for (int i = 0; i < depth; ++i) {
        os << "    ";
    }
}

void print_block(std::ostringstream& os, const Block& b, std::span<const std::string> names, int depth);

void print_stmt(std::ostringstream& os, const Stmt& s, std::span<const std::string> names, int depth) {
    indent(os, depth);
    std::visit(
        [&](const auto& st) {
            using S = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<S, AssignStmt>) {
                os << variable_name(names, st.var) << " = " << to_source(st.value, names) << ";\n";
            } else if constexpr (std::is_same_v<S, IfStmt>) {
                os << "if " << to_source(st.cond, names) << " ";
                print_block(os, st.then_branch, names, depth);
                if (!st.else_branch.empty()) {
                    indent(os, depth);
                    os << "else ";
                    print_block(os, st.else_branch, names, depth);
                }
            } else if constexpr (std::is_same_v<S, WhileStmt>) {
                os << "while " << to_source(st.cond, names) << " ";
                print_block(os, st.body, names, depth);
            } else if constexpr (std::is_same_v<S, SkipStmt>) {
                os << "skip;\n";
            } else {
                os << "assert(" << to_source(st.cond, names) << ");\n";
            }
        },
        s.node);
}

void print_block(std::ostringstream& os, const Block& b, std::span<const std::string> names, int depth) {
    os << "{\n";
    for (const auto& s : b) {
        print_stmt(os, s, names, depth + 1);
    }
    indent(os, depth);
    os << "}\n";
}

} // namespace

std::string to_source(const Expr& e, std::span<const std::string> names) {
    switch (e.op()) {
    case Expr::Op::constant: return std::to_string(e.value());
    case Expr::Op::variable: return variable_name(names, e.var());
    case Expr::Op::negate: return "-" + wrap(to_source(e.lhs(), names), precedence(e.lhs()) < 3);
    default: break;
    }
    const char* op = e.op() == Expr::Op::add ? " + " : e.op() == Expr::Op::subtract ? " - " : " * ";
    const int p = precedence(e);
    return wrap(to_source(e.lhs(), names), precedence(e.lhs()) < p) + op +
           wrap(to_source(e.rhs(), names), precedence(e.rhs()) <= p);
}

std::string to_source(const Condition& c, std::span<const std::string> names) {
    switch (c.kind()) {
    case Condition::Kind::truth: return "true";
    case Condition::Kind::falsity: return "false";
    case Condition::Kind::atom: {
        const Comparison& cmp = c.comparison();
        return to_source(cmp.lhs, names) + " " + relation_symbol(cmp.rel) + " " + to_source(cmp.rhs, names);
    }
    case Condition::Kind::negation: return "not " + wrap(to_source(c.lhs(), names), precedence(c.lhs()) < 3);
    default: break;
    }
    const char* op = c.kind() == Condition::Kind::conjunction ? " and " : " or ";
    const int p = precedence(c);
    return wrap(to_source(c.lhs(), names), precedence(c.lhs()) < p) + op +
           wrap(to_source(c.rhs(), names), precedence(c.rhs()) <= p);
}

std::string to_source(const Program& p) {
    std::ostringstream os;
    if (p.names.size() > 1) {
        os << "var ";
        for (std::size_t k = 1; k < p.names.size(); ++k) {
            os << (k > 1 ? ", " : "") << p.names[k];
        }
        os << ";\n";
    }
    if (!p.init.empty()) {
        os << "init ";
        print_block(os, p.init, p.names, 0);
    }
    for (const auto& proc : p.processes) {
        os << "process " << proc.name << " ";
        print_block(os, proc.body, p.names, 0);
    }
    return os.str();
}

} // namespace dbmai
