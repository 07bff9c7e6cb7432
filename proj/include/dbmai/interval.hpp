// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <ostream>
#include <string>

#include "dbmai/bound.hpp"
#include "dbmai/coefficient.hpp"

namespace dbmai {

/// Closed interval with possibly infinite endpoints, or the distinguished empty interval.
/// A missing lower bound means -infinity, a missing upper bound +infinity.
template <Coefficient T>
class Interval {
    bool empty_ = false;
    std::optional<T> lo_;
    std::optional<T> hi_;

  public:
    /// The whole line.
    Interval() = default;

    static Interval top() { return Interval{}; }
    static Interval empty() {
        Interval r;
        r.empty_ = true;
        return r;
    }
    static Interval point(const T& v) { return between(v, v); }
    /// Empty when both bounds are finite and lo > hi.
    static Interval between(std::optional<T> lo, std::optional<T> hi) {
        if (lo && hi && *hi < *lo) {
            return empty();
        }
        Interval r;
        r.lo_ = std::move(lo);
        r.hi_ = std::move(hi);
        return r;
    }

    [[nodiscard]] bool is_empty() const { return empty_; }
    [[nodiscard]] bool is_top() const { return !empty_ && !lo_ && !hi_; }
    [[nodiscard]] const std::optional<T>& lo() const { return lo_; }
    [[nodiscard]] const std::optional<T>& hi() const { return hi_; }

    /// Upper bound as a DBM entry.
    [[nodiscard]] Bound<T> upper_bound() const { return hi_ ? Bound<T>{*hi_} : Bound<T>::infinity(); }
    /// Negated lower bound as a DBM entry (the entry bounding 0 - v).
    [[nodiscard]] Bound<T> negated_lower_bound() const {
        return lo_ ? Bound<T>{checked_neg(*lo_)} : Bound<T>::infinity();
    }

    [[nodiscard]] bool contains(const T& v) const {
        return !empty_ && (!lo_ || !(v < *lo_)) && (!hi_ || !(*hi_ < v));
    }

    [[nodiscard]] bool subset_of(const Interval& o) const {
        if (empty_) {
            return true;
        }
        if (o.empty_) {
            return false;
        }
        const bool lo_ok = !o.lo_ || (lo_ && !(*lo_ < *o.lo_));
        const bool hi_ok = !o.hi_ || (hi_ && !(*o.hi_ < *hi_));
        return lo_ok && hi_ok;
    }

    [[nodiscard]] Interval hull(const Interval& o) const {
        if (empty_) {
            return o;
        }
        if (o.empty_) {
            return *this;
        }
        std::optional<T> lo = (lo_ && o.lo_) ? std::optional<T>{std::min(*lo_, *o.lo_)} : std::nullopt;
        std::optional<T> hi = (hi_ && o.hi_) ? std::optional<T>{std::max(*hi_, *o.hi_)} : std::nullopt;
        return between(std::move(lo), std::move(hi));
    }

    [[nodiscard]] Interval intersect(const Interval& o) const {
        if (empty_ || o.empty_) {
            return empty();
        }
        std::optional<T> lo = !lo_ ? o.lo_ : !o.lo_ ? lo_ : std::optional<T>{std::max(*lo_, *o.lo_)};
        std::optional<T> hi = !hi_ ? o.hi_ : !o.hi_ ? hi_ : std::optional<T>{std::min(*hi_, *o.hi_)};
        return between(std::move(lo), std::move(hi));
    }

    friend bool operator==(const Interval& a, const Interval& b) {
        if (a.empty_ || b.empty_) {
            return a.empty_ == b.empty_;
        }
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

    [[nodiscard]] std::string to_string() const {
        if (empty_) {
            return "empty";
        }
        std::string s = lo_ ? "[" + coefficient_string(*lo_) : "(-inf";
        s += ",";
        s += hi_ ? coefficient_string(*hi_) + "]" : "+inf)";
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Interval& i) { return os << i.to_string(); }
};

namespace detail {

// Point of the extended line used by interval products.
template <Coefficient T>
struct Extended {
    int inf = 0; // -1 or +1 for an infinite value, 0 when finite
    T value{};

    friend bool operator<(const Extended& a, const Extended& b) {
        if (a.inf != b.inf) {
            return a.inf < b.inf;
        }
        return a.inf == 0 && a.value < b.value;
    }
};

template <Coefficient T>
int sign_of(const Extended<T>& e) {
    if (e.inf != 0) {
        return e.inf;
    }
    return e.value < T{} ? -1 : (T{} < e.value ? 1 : 0);
}

// 0 * inf is taken as 0, which is the sound convention for endpoint products.
template <Coefficient T>
Extended<T> extended_mul(const Extended<T>& a, const Extended<T>& b) {
    if (a.inf == 0 && b.inf == 0) {
        return {0, checked_mul(a.value, b.value)};
    }
    const int s = sign_of(a) * sign_of(b);
    if (s == 0) {
        return {0, T{}};
    }
    return {s, T{}};
}

} // namespace detail

template <Coefficient T>
Interval<T> interval_add(const Interval<T>& a, const Interval<T>& b) {
    if (a.is_empty() || b.is_empty()) {
        return Interval<T>::empty();
    }
    try {
        std::optional<T> lo = (a.lo() && b.lo()) ? std::optional<T>{checked_add(*a.lo(), *b.lo())} : std::nullopt;
        std::optional<T> hi = (a.hi() && b.hi()) ? std::optional<T>{checked_add(*a.hi(), *b.hi())} : std::nullopt;
        return Interval<T>::between(std::move(lo), std::move(hi));
    } catch (const OverflowError&) {
        return Interval<T>::top();
    }
}

template <Coefficient T>
Interval<T> interval_neg(const Interval<T>& a) {
    if (a.is_empty()) {
        return a;
    }
    try {
        std::optional<T> lo = a.hi() ? std::optional<T>{checked_neg(*a.hi())} : std::nullopt;
        std::optional<T> hi = a.lo() ? std::optional<T>{checked_neg(*a.lo())} : std::nullopt;
        return Interval<T>::between(std::move(lo), std::move(hi));
    } catch (const OverflowError&) {
        return Interval<T>::top();
    }
}

template <Coefficient T>
Interval<T> interval_sub(const Interval<T>& a, const Interval<T>& b) {
    return interval_add(a, interval_neg(b));
}

template <Coefficient T>
Interval<T> interval_mul(const Interval<T>& a, const Interval<T>& b) {
    using E = detail::Extended<T>;
    if (a.is_empty() || b.is_empty()) {
        return Interval<T>::empty();
    }
    const auto lo_of = [](const Interval<T>& i) { return i.lo() ? E{0, *i.lo()} : E{-1, T{}}; };
    const auto hi_of = [](const Interval<T>& i) { return i.hi() ? E{0, *i.hi()} : E{1, T{}}; };
    try {
        const std::array<E, 4> products{
            detail::extended_mul(lo_of(a), lo_of(b)),
            detail::extended_mul(lo_of(a), hi_of(b)),
            detail::extended_mul(hi_of(a), lo_of(b)),
            detail::extended_mul(hi_of(a), hi_of(b)),
        };
        const auto [mn, mx] = std::minmax_element(products.begin(), products.end());
        std::optional<T> lo = mn->inf == 0 ? std::optional<T>{mn->value} : std::nullopt;
        std::optional<T> hi = mx->inf == 0 ? std::optional<T>{mx->value} : std::nullopt;
        return Interval<T>::between(std::move(lo), std::move(hi));
    } catch (const OverflowError&) {
        return Interval<T>::top();
    }
}

} // namespace dbmai
