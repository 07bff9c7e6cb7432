// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>

#include "dbmai/coefficient.hpp"

namespace dbmai {

/// A coefficient extended with +infinity. Entries of a DBM.
template <Coefficient T>
class Bound {
    std::optional<T> value_;

  public:
    /// Defaults to +infinity.
    Bound() = default;
    Bound(const T& v) : value_(v) {} // NOLINT(google-explicit-constructor)

    static Bound infinity() { return Bound{}; }
    static Bound finite(const T& v) { return Bound{v}; }

    [[nodiscard]] bool is_finite() const { return value_.has_value(); }
    [[nodiscard]] bool is_infinite() const { return !value_.has_value(); }

    /// Precondition: is_finite().
    [[nodiscard]] const T& value() const { return *value_; }

    friend Bound operator+(const Bound& a, const Bound& b) {
        if (a.is_infinite() || b.is_infinite()) {
            return infinity();
        }
        return Bound{checked_add(*a.value_, *b.value_)};
    }

    friend bool operator==(const Bound& a, const Bound& b) { return a.value_ == b.value_; }

    friend std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
        if (a.is_infinite()) {
            return b.is_infinite() ? std::strong_ordering::equal : std::strong_ordering::greater;
        }
        if (b.is_infinite()) {
            return std::strong_ordering::less;
        }
        if (*a.value_ < *b.value_) {
            return std::strong_ordering::less;
        }
        if (*b.value_ < *a.value_) {
            return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    [[nodiscard]] std::string to_string() const { return is_finite() ? coefficient_string(*value_) : "inf"; }

    friend std::ostream& operator<<(std::ostream& os, const Bound& b) { return os << b.to_string(); }
};

template <Coefficient T>
const Bound<T>& min(const Bound<T>& a, const Bound<T>& b) {
    return b < a ? b : a;
}

template <Coefficient T>
const Bound<T>& max(const Bound<T>& a, const Bound<T>& b) {
    return a < b ? b : a;
}

} // namespace dbmai
