// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dbmai/bound.hpp"
#include "dbmai/coefficient.hpp"
#include "dbmai/interval.hpp"

namespace dbmai {

/// Raised when two matrices of different dimension meet in a binary operation.
class DimensionError : public std::invalid_argument {
  public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// The potential constraint v_j - v_i <= c, stored at entry (i, j).
template <Coefficient T>
struct DiffConstraint {
    std::size_t i;
    std::size_t j;
    T c;
};

// =============================================================================
// Dbm
// =============================================================================

/// Square matrix of bounds over nodes {0, 1, ..., dim-1}. Node 0 is the
/// constant-zero variable; entry (i, j) bounds v_j - v_i. Any entries are
/// representable, including ones whose domain is empty.
template <Coefficient T>
class Dbm {
    std::size_t dim_;
    std::vector<Bound<T>> cells_;

    explicit Dbm(std::size_t dim) : dim_(dim), cells_(dim * dim) {}

  public:
    using coefficient_type = T;

    /// Every entry +infinity.
    static Dbm top(std::size_t dim) {
        if (dim == 0) {
            throw std::invalid_argument("a DBM needs at least the zero node");
        }
        return Dbm(dim);
    }

    /// Duplicate (i, j) pairs keep the smallest bound.
    static Dbm from_constraints(std::size_t dim, std::span<const DiffConstraint<T>> constraints) {
        Dbm m = top(dim);
        for (const auto& k : constraints) {
            if (k.i >= dim || k.j >= dim) {
                throw std::out_of_range("constraint index out of range");
            }
            m.tighten(k.i, k.j, Bound<T>{k.c});
        }
        return m;
    }

    static Dbm from_constraints(std::size_t dim, std::initializer_list<DiffConstraint<T>> constraints) {
        return from_constraints(dim, std::span<const DiffConstraint<T>>(constraints.begin(), constraints.size()));
    }

    /// Row-major list of dim*dim entries.
    static Dbm from_rows(std::size_t dim, std::vector<Bound<T>> cells) {
        if (cells.size() != dim * dim) {
            throw std::invalid_argument("cell count does not match dimension");
        }
        Dbm m = top(dim);
        m.cells_ = std::move(cells);
        return m;
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }

    [[nodiscard]] const Bound<T>& at(std::size_t i, std::size_t j) const {
        assert(i < dim_ && j < dim_);
        return cells_[i * dim_ + j];
    }

    void set(std::size_t i, std::size_t j, Bound<T> b) {
        assert(i < dim_ && j < dim_);
        cells_[i * dim_ + j] = std::move(b);
    }

    void tighten(std::size_t i, std::size_t j, const Bound<T>& b) {
        Bound<T>& cell = cells_[i * dim_ + j];
        if (b < cell) {
            cell = b;
        }
    }

    friend bool operator==(const Dbm& a, const Dbm& b) = default;
};

template <Coefficient T>
void require_same_dim(const Dbm<T>& a, const Dbm<T>& b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("DBM dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

/// Pointwise order on matrices.
template <Coefficient T>
bool leq(const Dbm<T>& m, const Dbm<T>& n) {
    require_same_dim(m, n);
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (n.at(i, j) < m.at(i, j)) {
                return false;
            }
        }
    }
    return true;
}

/// Zero diagonal and the triangle inequality on every triple.
template <Coefficient T>
bool is_closed(const Dbm<T>& m) {
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (m.at(i, i) != Bound<T>{T{}}) {
            return false;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (m.at(i, k) + m.at(k, j) < m.at(i, j)) {
                    return false;
                }
            }
        }
    }
    return true;
}

// =============================================================================
// ClosedDbm
// =============================================================================

/// A DBM in shortest-path normal form. Only produced by close() or by
/// operators that preserve closure; its domain is never empty.
template <Coefficient T>
class ClosedDbm {
    Dbm<T> m_;

  public:
    struct TrustClosed {};

    /// Precondition: is_closed(m).
    ClosedDbm(TrustClosed /*unused*/, Dbm<T> m) : m_(std::move(m)) { assert(is_closed(m_)); }

    [[nodiscard]] const Dbm<T>& matrix() const { return m_; }
    [[nodiscard]] std::size_t dim() const { return m_.dim(); }
    [[nodiscard]] const Bound<T>& at(std::size_t i, std::size_t j) const { return m_.at(i, j); }

    friend bool operator==(const ClosedDbm& a, const ClosedDbm& b) = default;
};

/// Floyd-Warshall shortest-path closure in place. Returns false when a
/// strictly negative cycle shows up on the diagonal; the matrix is then
/// meaningless.
template <Coefficient T>
bool close_in_place(Dbm<T>& m) {
    const std::size_t n = m.dim();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const Bound<T> ik = m.at(i, k);
            if (ik.is_infinite()) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                m.tighten(i, j, ik + m.at(k, j));
            }
        }
    }
    const Bound<T> zero{T{}};
    for (std::size_t i = 0; i < n; ++i) {
        if (m.at(i, i) < zero) {
            return false;
        }
        m.set(i, i, zero);
    }
    return true;
}

/// Normal form of m, or nullopt when its domain is empty.
template <Coefficient T>
std::optional<ClosedDbm<T>> close(Dbm<T> m) {
    if (!close_in_place(m)) {
        return std::nullopt;
    }
    return ClosedDbm<T>{typename ClosedDbm<T>::TrustClosed{}, std::move(m)};
}

template <Coefficient T>
const ClosedDbm<T>& close(const ClosedDbm<T>& m) {
    return m;
}

template <Coefficient T>
bool is_empty(const Dbm<T>& m) {
    Dbm<T> copy = m;
    return !close_in_place(copy);
}

/// Semantic inclusion of the domains.
template <Coefficient T>
bool includes(const Dbm<T>& m, const Dbm<T>& n) {
    require_same_dim(m, n);
    const auto mc = close(m);
    if (!mc) {
        return true;
    }
    if (is_empty(n)) {
        return false;
    }
    return leq(mc->matrix(), n);
}

template <Coefficient T>
bool sem_equal(const Dbm<T>& m, const Dbm<T>& n) {
    require_same_dim(m, n);
    const auto mc = close(m);
    const auto nc = close(n);
    if (!mc || !nc) {
        return !mc && !nc;
    }
    return *mc == *nc;
}

/// Values variable k takes over the domain of a closed matrix.
template <Coefficient T>
Interval<T> project(const ClosedDbm<T>& m, std::size_t k) {
    if (k == 0 || k >= m.dim()) {
        throw std::out_of_range("projection index must name a program variable");
    }
    const Bound<T>& lower = m.at(k, 0);
    const Bound<T>& upper = m.at(0, k);
    std::optional<T> lo = lower.is_finite() ? std::optional<T>{checked_neg(lower.value())} : std::nullopt;
    std::optional<T> hi = upper.is_finite() ? std::optional<T>{upper.value()} : std::nullopt;
    return Interval<T>::between(std::move(lo), std::move(hi));
}

template <Coefficient T>
Interval<T> project(const Dbm<T>& m, std::size_t k) {
    if (k == 0 || k >= m.dim()) {
        throw std::out_of_range("projection index must name a program variable");
    }
    const auto closed = close(m);
    if (!closed) {
        return Interval<T>::empty();
    }
    return project(*closed, k);
}

/// Rows of entries separated by spaces, `inf` for +infinity.
template <Coefficient T>
std::string dump(const Dbm<T>& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (j != 0) {
                os << ' ';
            }
            os << m.at(i, j);
        }
        os << '\n';
    }
    return os.str();
}

} // namespace dbmai
