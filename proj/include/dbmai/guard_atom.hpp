// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>

#include "dbmai/coefficient.hpp"
#include "dbmai/condition.hpp"
#include "dbmai/expr.hpp"

namespace dbmai {

/// A test in potential-constraint form. Upper and lower bounds use node 0:
/// v_j <= c is (j, 0, c) and -v_i <= c is (0, i, c).
template <Coefficient T>
struct GuardAtom {
    enum class Kind {
        less_equal, // v_j - v_i <= c
        equal,      // v_j - v_i = c
        unsupported,
        infeasible, // a constant comparison that never holds
    };

    Kind kind = Kind::unsupported;
    std::size_t j = 0;
    std::size_t i = 0;
    T c{};

    static GuardAtom diff(std::size_t j, std::size_t i, T c) {
        if (i == j) {
            throw std::invalid_argument("guard v_j - v_i needs distinct variables");
        }
        return {Kind::less_equal, j, i, std::move(c)};
    }
    static GuardAtom upper(std::size_t j, T c) { return diff(j, 0, std::move(c)); }
    static GuardAtom lower(std::size_t i, T c) { return diff(0, i, std::move(c)); }
    static GuardAtom eq(std::size_t j, std::size_t i, T c) {
        if (i == j) {
            throw std::invalid_argument("guard v_j - v_i needs distinct variables");
        }
        return {Kind::equal, j, i, std::move(c)};
    }
    static GuardAtom unsupported() { return {}; }
    static GuardAtom infeasible() { return {Kind::infeasible, 0, 0, T{}}; }

    friend bool operator==(const GuardAtom&, const GuardAtom&) = default;
};

/// Maps a comparison onto a guard atom when it has one of the shapes
/// x <> c, x - y <> c (after moving everything to one side). Strict
/// comparisons shift by one over integers and degrade to non-strict over
/// rationals; != and anything else is unsupported.
template <Coefficient T>
GuardAtom<T> make_guard_atom(const Comparison& cmp) {
    using Atom = GuardAtom<T>;
    const auto l = linearize(cmp.lhs);
    const auto r = linearize(cmp.rhs);
    if (!l || !r) {
        return Atom::unsupported();
    }
    auto f = subtract(*l, *r);
    if (!f) {
        return Atom::unsupported();
    }
    Relation rel = cmp.rel;
    if (rel == Relation::ne) {
        return Atom::unsupported();
    }
    try {
        if (rel == Relation::ge || rel == Relation::gt) {
            LinearForm negated;
            for (const auto& [v, k] : f->coeffs) {
                negated.coeffs[v] = CoefficientTraits<Integer>::neg(k);
            }
            negated.constant = CoefficientTraits<Integer>::neg(f->constant);
            f = negated;
            rel = rel == Relation::ge ? Relation::le : Relation::lt;
        }
        // f <rel> 0 with rel in {<, <=, =}
        T constant = coefficient<T>(f->constant);
        if (rel == Relation::lt) {
            if constexpr (CoefficientTraits<T>::integral) {
                constant = checked_add(constant, coefficient<T>(1));
            }
            rel = Relation::le;
        }
        // sum + constant <rel> 0  <=>  sum <rel> -constant
        const T bound = checked_neg(constant);
        const bool is_eq = rel == Relation::eq;
        const auto& coeffs = f->coeffs;
        if (coeffs.empty()) {
            const bool holds = is_eq ? bound == T{} : !(bound < T{});
            return holds ? Atom::unsupported() : Atom::infeasible();
        }
        if (coeffs.size() == 1) {
            const auto [v, k] = *coeffs.begin();
            if (k == 1) {
                return is_eq ? Atom::eq(v, 0, bound) : Atom::diff(v, 0, bound);
            }
            if (k == -1) {
                return is_eq ? Atom::eq(0, v, bound) : Atom::diff(0, v, bound);
            }
            return Atom::unsupported();
        }
        if (coeffs.size() == 2) {
            auto it = coeffs.begin();
            const auto [a, ka] = *it++;
            const auto [b, kb] = *it;
            std::size_t pos = 0;
            std::size_t neg = 0;
            if (ka == 1 && kb == -1) {
                pos = a;
                neg = b;
            } else if (ka == -1 && kb == 1) {
                pos = b;
                neg = a;
            } else {
                return Atom::unsupported();
            }
            return is_eq ? Atom::eq(pos, neg, bound) : Atom::diff(pos, neg, bound);
        }
    } catch (const OverflowError&) {
        return Atom::unsupported();
    }
    return Atom::unsupported();
}

} // namespace dbmai
