// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <concepts>

#include "dbmai/expr.hpp"
#include "dbmai/interval.hpp"

namespace dbmai {

/// Interval enclosure of e where `lookup(k)` gives the range of variable k.
/// Overflow in a subexpression widens that subexpression to the whole line.
template <Coefficient T, typename Lookup>
    requires std::invocable<const Lookup&, std::size_t>
Interval<T> eval_interval(const Expr& e, const Lookup& lookup) {
    switch (e.op()) {
    case Expr::Op::constant: return Interval<T>::point(coefficient<T>(e.value()));
    case Expr::Op::variable: return lookup(e.var());
    case Expr::Op::negate: return interval_neg(eval_interval<T>(e.lhs(), lookup));
    case Expr::Op::add: return interval_add(eval_interval<T>(e.lhs(), lookup), eval_interval<T>(e.rhs(), lookup));
    case Expr::Op::subtract: return interval_sub(eval_interval<T>(e.lhs(), lookup), eval_interval<T>(e.rhs(), lookup));
    case Expr::Op::multiply: return interval_mul(eval_interval<T>(e.lhs(), lookup), eval_interval<T>(e.rhs(), lookup));
    }
    return Interval<T>::top();
}

} // namespace dbmai
