// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dbmai/expr.hpp"

namespace dbmai {

Expr Expr::constant(Integer value) { return Expr(std::make_shared<const Node>(Node{Op::constant, value, 0, {}, {}})); }

Expr Expr::variable(std::size_t index) {
    return Expr(std::make_shared<const Node>(Node{Op::variable, 0, index, {}, {}}));
}

Expr Expr::negate(Expr operand) {
    return Expr(std::make_shared<const Node>(Node{Op::negate, 0, 0, std::make_shared<const Expr>(std::move(operand)), {}}));
}

Expr Expr::add(Expr lhs, Expr rhs) {
    return Expr(std::make_shared<const Node>(Node{Op::add, 0, 0, std::make_shared<const Expr>(std::move(lhs)),
                                                  std::make_shared<const Expr>(std::move(rhs))}));
}

Expr Expr::subtract(Expr lhs, Expr rhs) {
    return Expr(std::make_shared<const Node>(Node{Op::subtract, 0, 0, std::make_shared<const Expr>(std::move(lhs)),
                                                  std::make_shared<const Expr>(std::move(rhs))}));
}

Expr Expr::multiply(Expr lhs, Expr rhs) {
    return Expr(std::make_shared<const Node>(Node{Op::multiply, 0, 0, std::make_shared<const Expr>(std::move(lhs)),
                                                  std::make_shared<const Expr>(std::move(rhs))}));
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.op() != b.op()) {
        return false;
    }
    switch (a.op()) {
    case Expr::Op::constant: return a.value() == b.value();
    case Expr::Op::variable: return a.var() == b.var();
    case Expr::Op::negate: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

namespace {

using IntTraits = CoefficientTraits<Integer>;

struct NonLinear {};

LinearForm scale(const LinearForm& f, Integer k) {
    LinearForm r;
    if (k == 0) {
        return r;
    }
    for (const auto& [v, c] : f.coeffs) {
        r.coeffs[v] = IntTraits::mul(c, k);
    }
    r.constant = IntTraits::mul(f.constant, k);
    return r;
}

LinearForm sum(const LinearForm& a, const LinearForm& b) {
    LinearForm r = a;
    for (const auto& [v, c] : b.coeffs) {
        const Integer s = IntTraits::add(r.coeffs[v], c);
        if (s == 0) {
            r.coeffs.erase(v);
        } else {
            r.coeffs[v] = s;
        }
    }
    r.constant = IntTraits::add(r.constant, b.constant);
    return r;
}

LinearForm linearize_checked(const Expr& e) {
    switch (e.op()) {
    case Expr::Op::constant: return LinearForm{{}, e.value()};
    case Expr::Op::variable: return LinearForm{{{e.var(), 1}}, 0};
    case Expr::Op::negate: return scale(linearize_checked(e.lhs()), -1);
    case Expr::Op::add: return sum(linearize_checked(e.lhs()), linearize_checked(e.rhs()));
    case Expr::Op::subtract: return sum(linearize_checked(e.lhs()), scale(linearize_checked(e.rhs()), -1));
    case Expr::Op::multiply: {
        const LinearForm l = linearize_checked(e.lhs());
        const LinearForm r = linearize_checked(e.rhs());
        if (l.coeffs.empty()) {
            return scale(r, l.constant);
        }
        if (r.coeffs.empty()) {
            return scale(l, r.constant);
        }
        throw NonLinear{};
    }
    }
    throw NonLinear{};
}

} // namespace

std::optional<LinearForm> linearize(const Expr& e) {
    try {
        return linearize_checked(e);
    } catch (const OverflowError&) {
        return std::nullopt;
    } catch (const NonLinear&) {
        return std::nullopt;
    }
}

std::optional<LinearForm> subtract(const LinearForm& a, const LinearForm& b) {
    try {
        return sum(a, scale(b, -1));
    } catch (const OverflowError&) {
        return std::nullopt;
    }
}

} // namespace dbmai
