// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>

#include "dbmai/expr.hpp"

namespace dbmai {

enum class Relation { lt, le, eq, ne, ge, gt };

/// The relation holding exactly when `rel` does not.
Relation complement(Relation rel);
const char* relation_symbol(Relation rel);

struct Comparison {
    Expr lhs;
    Relation rel;
    Expr rhs;

    friend bool operator==(const Comparison&, const Comparison&) = default;
};

/// Immutable boolean condition tree over comparisons.
class Condition {
  public:
    enum class Kind { truth, falsity, atom, conjunction, disjunction, negation };

    static Condition truth();
    static Condition falsity();
    static Condition atom(Comparison c);
    static Condition conjunction(Condition lhs, Condition rhs);
    static Condition disjunction(Condition lhs, Condition rhs);
    static Condition negation(Condition operand);

    [[nodiscard]] Kind kind() const { return node_->kind; }
    /// Precondition: kind() == atom.
    [[nodiscard]] const Comparison& comparison() const { return *node_->atom; }
    /// Operand of a negation, left side of conjunction/disjunction.
    [[nodiscard]] const Condition& lhs() const { return *node_->lhs; }
    [[nodiscard]] const Condition& rhs() const { return *node_->rhs; }

    friend bool operator==(const Condition& a, const Condition& b);

  private:
    struct Node {
        Kind kind;
        std::shared_ptr<const Comparison> atom;
        std::shared_ptr<const Condition> lhs;
        std::shared_ptr<const Condition> rhs;
    };
    explicit Condition(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Pushes negations down to the atoms (De Morgan), complementing
/// comparison relations; the result contains no negation node.
Condition normalize_condition(const Condition& c);

bool is_negation_normal(const Condition& c);

} // namespace dbmai
