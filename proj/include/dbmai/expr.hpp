// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>

#include "dbmai/coefficient.hpp"

namespace dbmai {

/// Immutable arithmetic expression over integer constants and program
/// variables (index >= 1). No division.
class Expr {
  public:
    enum class Op { constant, variable, negate, add, subtract, multiply };

    static Expr constant(Integer value);
    static Expr variable(std::size_t index);
    static Expr negate(Expr operand);
    static Expr add(Expr lhs, Expr rhs);
    static Expr subtract(Expr lhs, Expr rhs);
    static Expr multiply(Expr lhs, Expr rhs);

    [[nodiscard]] Op op() const { return node_->op; }
    /// Precondition: op() == constant.
    [[nodiscard]] Integer value() const { return node_->value; }
    /// Precondition: op() == variable.
    [[nodiscard]] std::size_t var() const { return node_->var; }
    /// Operand of negate, left operand of binary nodes.
    [[nodiscard]] const Expr& lhs() const { return *node_->lhs; }
    [[nodiscard]] const Expr& rhs() const { return *node_->rhs; }

    friend bool operator==(const Expr& a, const Expr& b);

  private:
    struct Node {
        Op op;
        Integer value = 0;
        std::size_t var = 0;
        std::shared_ptr<const Expr> lhs;
        std::shared_ptr<const Expr> rhs;
    };
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// sum(coeffs[v] * v) + constant; zero coefficients are never stored.
struct LinearForm {
    std::map<std::size_t, Integer> coeffs;
    Integer constant = 0;

    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Affine normal form of e, or nullopt when e is non-linear or a
/// coefficient overflows.
std::optional<LinearForm> linearize(const Expr& e);

/// a - b, nullopt on overflow.
std::optional<LinearForm> subtract(const LinearForm& a, const LinearForm& b);

} // namespace dbmai
