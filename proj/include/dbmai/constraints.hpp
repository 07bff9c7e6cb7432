// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dbmai/domain.hpp"

namespace dbmai {

/// One printable fact read off a normalized element.
template <Coefficient T>
struct Constraint {
    enum class Kind {
        bottom,
        range,   // lo <= v_first <= hi, at least one side finite
        diff_le, // v_first - v_second <= value
        diff_eq, // v_first - v_second = value
    };

    Kind kind = Kind::bottom;
    std::size_t first = 0;
    std::size_t second = 0;
    std::optional<T> lo;
    std::optional<T> hi;
    T value{};

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Reads the facts off the closed matrix: finite variable ranges first, then
/// relational bounds for each pair i < j, with matching opposite bounds
/// folded into an equality.
template <Coefficient T>
std::vector<Constraint<T>> to_constraints(const NormalizedElement<T>& e) {
    using C = Constraint<T>;
    if (e.is_bottom()) {
        return {C{}};
    }
    const ClosedDbm<T>& m = e.closed();
    std::vector<C> out;
    for (std::size_t k = 1; k < m.dim(); ++k) {
        const Interval<T> r = project(m, k);
        if (r.lo() || r.hi()) {
            out.push_back(C{C::Kind::range, k, 0, r.lo(), r.hi(), T{}});
        }
    }
    for (std::size_t i = 1; i < m.dim(); ++i) {
        for (std::size_t j = i + 1; j < m.dim(); ++j) {
            const Bound<T>& upper = m.at(j, i); // v_i - v_j <= upper
            const Bound<T>& rev = m.at(i, j);   // v_j - v_i <= rev
            if (upper.is_finite() && rev.is_finite() && upper.value() == checked_neg(rev.value())) {
                out.push_back(C{C::Kind::diff_eq, i, j, {}, {}, upper.value()});
                continue;
            }
            if (upper.is_finite()) {
                out.push_back(C{C::Kind::diff_le, i, j, {}, {}, upper.value()});
            }
            if (rev.is_finite()) {
                out.push_back(C{C::Kind::diff_le, j, i, {}, {}, rev.value()});
            }
        }
    }
    return out;
}

inline std::string variable_name(std::span<const std::string> names, std::size_t k) {
    return k < names.size() && !names[k].empty() ? names[k] : "v" + std::to_string(k);
}

/// ASCII rendering: `x in [a,b]`, `x - y <= c`, `x - y = c`, `bottom`.
template <Coefficient T>
std::string render(const Constraint<T>& c, std::span<const std::string> names) {
    using Kind = typename Constraint<T>::Kind;
    switch (c.kind) {
    case Kind::bottom: return "bottom";
    case Kind::range: {
        std::string s = variable_name(names, c.first) + " in ";
        s += c.lo ? "[" + coefficient_string(*c.lo) : "(-inf";
        s += ",";
        s += c.hi ? coefficient_string(*c.hi) + "]" : "+inf)";
        return s;
    }
    case Kind::diff_le:
        return variable_name(names, c.first) + " - " + variable_name(names, c.second) + " <= " +
               coefficient_string(c.value);
    case Kind::diff_eq:
        return variable_name(names, c.first) + " - " + variable_name(names, c.second) + " = " +
               coefficient_string(c.value);
    }
    return {};
}

template <Coefficient T>
std::vector<std::string> render_all(const NormalizedElement<T>& e, std::span<const std::string> names) {
    std::vector<std::string> out;
    for (const auto& c : to_constraints(e)) {
        out.push_back(render(c, names));
    }
    return out;
}

} // namespace dbmai
