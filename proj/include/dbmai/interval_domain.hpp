// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dbmai/condition.hpp"
#include "dbmai/constraints.hpp"
#include "dbmai/guard_atom.hpp"
#include "dbmai/interval.hpp"
#include "dbmai/interval_eval.hpp"

namespace dbmai {

/// Classic interval widening: unstable bounds jump to infinity.
template <Coefficient T>
Interval<T> iv_widen(const Interval<T>& a, const Interval<T>& b) {
    if (a.is_empty() || b.is_empty()) {
        throw std::invalid_argument("interval widening is defined on non-empty intervals");
    }
    std::optional<T> lo = (a.lo() && b.lo() && !(*b.lo() < *a.lo())) ? a.lo() : std::nullopt;
    std::optional<T> hi = (a.hi() && b.hi() && !(*a.hi() < *b.hi())) ? a.hi() : std::nullopt;
    return Interval<T>::between(std::move(lo), std::move(hi));
}

/// Replaces only the infinite bounds of `a`.
template <Coefficient T>
Interval<T> iv_narrow(const Interval<T>& a, const Interval<T>& b) {
    if (a.is_empty() || b.is_empty()) {
        return Interval<T>::empty();
    }
    return Interval<T>::between(a.lo() ? a.lo() : b.lo(), a.hi() ? a.hi() : b.hi());
}

/// Bottom or one non-empty interval per program variable 1..dim-1.
template <Coefficient T>
class BoxEnv {
    std::size_t dim_;
    std::optional<std::vector<Interval<T>>> ranges_;

    explicit BoxEnv(std::size_t dim) : dim_(dim) {}

  public:
    using coefficient_type = T;

    static BoxEnv bottom(std::size_t dim) {
        if (dim == 0) {
            throw std::invalid_argument("an environment needs at least the zero node");
        }
        return BoxEnv(dim);
    }
    static BoxEnv top(std::size_t dim) {
        BoxEnv e = bottom(dim);
        e.ranges_.emplace(dim - 1, Interval<T>::top());
        return e;
    }
    /// Bottom when any range is empty.
    static BoxEnv of(std::vector<Interval<T>> ranges) {
        BoxEnv e = bottom(ranges.size() + 1);
        for (const auto& r : ranges) {
            if (r.is_empty()) {
                return e;
            }
        }
        e.ranges_ = std::move(ranges);
        return e;
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] bool is_bottom() const { return !ranges_.has_value(); }

    /// Precondition: !is_bottom() and 1 <= k < dim().
    [[nodiscard]] const Interval<T>& at(std::size_t k) const {
        if (k == 0 || k >= dim_) {
            throw std::out_of_range("variable index " + std::to_string(k) + " out of range");
        }
        return (*ranges_)[k - 1];
    }
    [[nodiscard]] const std::vector<Interval<T>>& ranges() const { return *ranges_; }

    /// Bottom when r is empty.
    [[nodiscard]] BoxEnv with(std::size_t k, Interval<T> r) const {
        (void)at(k);
        if (r.is_empty()) {
            return bottom(dim_);
        }
        BoxEnv e = *this;
        (*e.ranges_)[k - 1] = std::move(r);
        return e;
    }

    friend bool operator==(const BoxEnv&, const BoxEnv&) = default;
};

namespace detail {

template <Coefficient T>
void require_same_dim(const BoxEnv<T>& a, const BoxEnv<T>& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("environment dimension mismatch");
    }
}

template <Coefficient T, typename Op>
BoxEnv<T> pointwise(const BoxEnv<T>& a, const BoxEnv<T>& b, Op op) {
    std::vector<Interval<T>> out;
    out.reserve(a.dim() - 1);
    for (std::size_t k = 1; k < a.dim(); ++k) {
        out.push_back(op(a.at(k), b.at(k)));
    }
    return BoxEnv<T>::of(std::move(out));
}

} // namespace detail

template <Coefficient T>
bool leq(const BoxEnv<T>& a, const BoxEnv<T>& b) {
    detail::require_same_dim(a, b);
    if (a.is_bottom()) {
        return true;
    }
    if (b.is_bottom()) {
        return false;
    }
    for (std::size_t k = 1; k < a.dim(); ++k) {
        if (!a.at(k).subset_of(b.at(k))) {
            return false;
        }
    }
    return true;
}

template <Coefficient T>
BoxEnv<T> join(const BoxEnv<T>& a, const BoxEnv<T>& b) {
    detail::require_same_dim(a, b);
    if (a.is_bottom()) {
        return b;
    }
    if (b.is_bottom()) {
        return a;
    }
    return detail::pointwise(a, b, [](const Interval<T>& x, const Interval<T>& y) { return x.hull(y); });
}

template <Coefficient T>
BoxEnv<T> meet(const BoxEnv<T>& a, const BoxEnv<T>& b) {
    detail::require_same_dim(a, b);
    if (a.is_bottom() || b.is_bottom()) {
        return BoxEnv<T>::bottom(a.dim());
    }
    return detail::pointwise(a, b, [](const Interval<T>& x, const Interval<T>& y) { return x.intersect(y); });
}

template <Coefficient T>
BoxEnv<T> widen(const BoxEnv<T>& a, const BoxEnv<T>& b) {
    detail::require_same_dim(a, b);
    if (a.is_bottom()) {
        return b;
    }
    if (b.is_bottom()) {
        return a;
    }
    return detail::pointwise(a, b, [](const Interval<T>& x, const Interval<T>& y) { return iv_widen(x, y); });
}

template <Coefficient T>
BoxEnv<T> narrow(const BoxEnv<T>& a, const BoxEnv<T>& b) {
    detail::require_same_dim(a, b);
    if (a.is_bottom() || b.is_bottom()) {
        return BoxEnv<T>::bottom(a.dim());
    }
    return detail::pointwise(a, b, [](const Interval<T>& x, const Interval<T>& y) { return iv_narrow(x, y); });
}

/// Precondition: env is not bottom.
template <Coefficient T>
Interval<T> iv_eval(const Expr& e, const BoxEnv<T>& env) {
    if (env.is_bottom()) {
        throw std::invalid_argument("cannot evaluate in the bottom environment");
    }
    return eval_interval<T>(e, [&](std::size_t k) { return env.at(k); });
}

template <Coefficient T>
BoxEnv<T> assign(const BoxEnv<T>& env, std::size_t k, const Expr& e) {
    if (env.is_bottom()) {
        return env;
    }
    return env.with(k, iv_eval(e, env));
}

namespace detail {

// Refines env with v_j - v_i <= c, using the intervals of the other side.
template <Coefficient T>
BoxEnv<T> refine_difference(const BoxEnv<T>& env, std::size_t j, std::size_t i, const T& c) {
    if (env.is_bottom()) {
        return env;
    }
    try {
        if (i == 0) {
            return env.with(j, env.at(j).intersect(Interval<T>::between(std::nullopt, c)));
        }
        if (j == 0) {
            return env.with(i, env.at(i).intersect(Interval<T>::between(checked_neg(c), std::nullopt)));
        }
        BoxEnv<T> out = env;
        if (const auto& hi_i = env.at(i).hi()) {
            out = out.with(j, out.at(j).intersect(Interval<T>::between(std::nullopt, checked_add(*hi_i, c))));
        }
        if (out.is_bottom()) {
            return out;
        }
        if (const auto& lo_j = env.at(j).lo()) {
            out = out.with(i, out.at(i).intersect(Interval<T>::between(checked_sub(*lo_j, c), std::nullopt)));
        }
        return out;
    } catch (const OverflowError&) {
        return env;
    }
}

} // namespace detail

template <Coefficient T>
BoxEnv<T> guard(const BoxEnv<T>& env, const GuardAtom<T>& g) {
    using Kind = typename GuardAtom<T>::Kind;
    if (env.is_bottom() || g.kind == Kind::unsupported) {
        return env;
    }
    if (g.kind == Kind::infeasible) {
        return BoxEnv<T>::bottom(env.dim());
    }
    BoxEnv<T> out = detail::refine_difference(env, g.j, g.i, g.c);
    if (g.kind == Kind::equal) {
        out = detail::refine_difference(out, g.i, g.j, checked_neg(g.c));
    }
    return out;
}

template <Coefficient T>
BoxEnv<T> guard(const BoxEnv<T>& env, const Condition& c) {
    if (env.is_bottom()) {
        return env;
    }
    switch (c.kind()) {
    case Condition::Kind::truth: return env;
    case Condition::Kind::falsity: return BoxEnv<T>::bottom(env.dim());
    case Condition::Kind::atom: return guard(env, make_guard_atom<T>(c.comparison()));
    case Condition::Kind::conjunction: return guard(guard(env, c.lhs()), c.rhs());
    case Condition::Kind::disjunction: return join(guard(env, c.lhs()), guard(env, c.rhs()));
    case Condition::Kind::negation: return guard(env, normalize_condition(c));
    }
    return env;
}

/// `v in [a,b]` lines for bounded variables, or `bottom`.
template <Coefficient T>
std::vector<std::string> render_all(const BoxEnv<T>& env, std::span<const std::string> names) {
    using C = Constraint<T>;
    if (env.is_bottom()) {
        return {"bottom"};
    }
    std::vector<std::string> out;
    for (std::size_t k = 1; k < env.dim(); ++k) {
        const auto& r = env.at(k);
        if (r.lo() || r.hi()) {
            out.push_back(render(C{C::Kind::range, k, 0, r.lo(), r.hi(), T{}}, names));
        }
    }
    return out;
}

} // namespace dbmai
