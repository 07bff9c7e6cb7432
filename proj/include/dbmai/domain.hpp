// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dbmai/condition.hpp"
#include "dbmai/dbm.hpp"
#include "dbmai/expr.hpp"
#include "dbmai/guard_atom.hpp"
#include "dbmai/interval_eval.hpp"

namespace dbmai {

// =============================================================================
// Lattice elements
// =============================================================================

/// Bottom or an arbitrary (possibly unclosed, possibly empty) matrix.
template <Coefficient T>
class AbstractElement {
    std::size_t dim_;
    std::optional<Dbm<T>> m_;

    explicit AbstractElement(std::size_t dim) : dim_(dim) {}

  public:
    using coefficient_type = T;

    AbstractElement(Dbm<T> m) : dim_(m.dim()), m_(std::move(m)) {} // NOLINT(google-explicit-constructor)

    static AbstractElement bottom(std::size_t dim) {
        if (dim == 0) {
            throw std::invalid_argument("a DBM needs at least the zero node");
        }
        return AbstractElement(dim);
    }
    static AbstractElement top(std::size_t dim) { return AbstractElement(Dbm<T>::top(dim)); }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] bool is_bottom() const { return !m_.has_value(); }
    /// Precondition: !is_bottom().
    [[nodiscard]] const Dbm<T>& matrix() const { return *m_; }

    /// Bottom, or a matrix whose domain might still be empty.
    [[nodiscard]] bool denotes_empty() const { return !m_ || is_empty(*m_); }

    friend bool operator==(const AbstractElement&, const AbstractElement&) = default;
};

/// Bottom or a closed matrix; one representation per domain.
template <Coefficient T>
class NormalizedElement {
    std::size_t dim_;
    std::optional<ClosedDbm<T>> m_;

    explicit NormalizedElement(std::size_t dim) : dim_(dim) {}

  public:
    using coefficient_type = T;

    NormalizedElement(ClosedDbm<T> m) : dim_(m.dim()), m_(std::move(m)) {} // NOLINT(google-explicit-constructor)

    static NormalizedElement bottom(std::size_t dim) {
        if (dim == 0) {
            throw std::invalid_argument("a DBM needs at least the zero node");
        }
        return NormalizedElement(dim);
    }

    static NormalizedElement top(std::size_t dim) { return normalize(AbstractElement<T>::top(dim)); }

    static NormalizedElement normalize(const AbstractElement<T>& a) {
        if (a.is_bottom()) {
            return bottom(a.dim());
        }
        auto closed = close(a.matrix());
        return closed ? NormalizedElement(std::move(*closed)) : bottom(a.dim());
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] bool is_bottom() const { return !m_.has_value(); }
    /// Precondition: !is_bottom().
    [[nodiscard]] const ClosedDbm<T>& closed() const { return *m_; }

    [[nodiscard]] AbstractElement<T> element() const {
        return m_ ? AbstractElement<T>(m_->matrix()) : AbstractElement<T>::bottom(dim_);
    }

    friend bool operator==(const NormalizedElement&, const NormalizedElement&) = default;
};

template <Coefficient T>
void require_same_dim(const AbstractElement<T>& a, const AbstractElement<T>& b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("element dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                             std::to_string(b.dim()));
    }
}

/// Lattice order of M-bottom: bottom first, then the pointwise order.
template <Coefficient T>
bool leq(const AbstractElement<T>& a, const AbstractElement<T>& b) {
    require_same_dim(a, b);
    if (a.is_bottom()) {
        return true;
    }
    return !b.is_bottom() && leq(a.matrix(), b.matrix());
}

/// Semantic inclusion of the denoted sets.
template <Coefficient T>
bool includes(const AbstractElement<T>& a, const AbstractElement<T>& b) {
    require_same_dim(a, b);
    if (a.is_bottom()) {
        return true;
    }
    if (b.is_bottom()) {
        return a.denotes_empty();
    }
    return includes(a.matrix(), b.matrix());
}

template <Coefficient T>
bool sem_equal(const AbstractElement<T>& a, const AbstractElement<T>& b) {
    return NormalizedElement<T>::normalize(a) == NormalizedElement<T>::normalize(b);
}

// =============================================================================
// Operators
// =============================================================================

/// Pointwise minimum; exact intersection of the domains.
template <Coefficient T>
AbstractElement<T> meet(const AbstractElement<T>& a, const AbstractElement<T>& b) {
    require_same_dim(a, b);
    if (a.is_bottom() || b.is_bottom()) {
        return AbstractElement<T>::bottom(a.dim());
    }
    Dbm<T> r = a.matrix();
    for (std::size_t i = 0; i < r.dim(); ++i) {
        for (std::size_t j = 0; j < r.dim(); ++j) {
            r.tighten(i, j, b.matrix().at(i, j));
        }
    }
    return r;
}

/// Both sides are closed first, so the pointwise maximum is the smallest
/// representable superset of the union; the result is closed.
template <Coefficient T>
AbstractElement<T> join(const AbstractElement<T>& a, const AbstractElement<T>& b) {
    require_same_dim(a, b);
    const auto na = NormalizedElement<T>::normalize(a);
    const auto nb = NormalizedElement<T>::normalize(b);
    if (na.is_bottom()) {
        return nb.element();
    }
    if (nb.is_bottom()) {
        return na.element();
    }
    Dbm<T> r = na.closed().matrix();
    for (std::size_t i = 0; i < r.dim(); ++i) {
        for (std::size_t j = 0; j < r.dim(); ++j) {
            r.set(i, j, max(r.at(i, j), nb.closed().at(i, j)));
        }
    }
    return r;
}

/// Keeps the stable entries of `a` and drops the rest to +infinity. The
/// result must not be closed by callers iterating a widening chain.
template <Coefficient T>
AbstractElement<T> widen(const AbstractElement<T>& a, const AbstractElement<T>& b) {
    require_same_dim(a, b);
    if (a.is_bottom()) {
        return b;
    }
    if (b.is_bottom()) {
        return a;
    }
    Dbm<T> r = a.matrix();
    for (std::size_t i = 0; i < r.dim(); ++i) {
        for (std::size_t j = 0; j < r.dim(); ++j) {
            if (!(b.matrix().at(i, j) <= r.at(i, j))) {
                r.set(i, j, Bound<T>::infinity());
            }
        }
    }
    return r;
}

/// Refines only the unbounded entries of `a`.
template <Coefficient T>
AbstractElement<T> narrow(const AbstractElement<T>& a, const AbstractElement<T>& b) {
    require_same_dim(a, b);
    if (a.is_bottom() || b.is_bottom()) {
        return AbstractElement<T>::bottom(a.dim());
    }
    Dbm<T> r = a.matrix();
    for (std::size_t i = 0; i < r.dim(); ++i) {
        for (std::size_t j = 0; j < r.dim(); ++j) {
            if (r.at(i, j).is_infinite()) {
                r.set(i, j, b.matrix().at(i, j));
            }
        }
    }
    return r;
}

template <Coefficient T>
void require_variable(const AbstractElement<T>& a, std::size_t k) {
    if (k == 0 || k >= a.dim()) {
        throw std::out_of_range("variable index " + std::to_string(k) + " out of range");
    }
}

/// Removes every constraint on v_k while keeping the relations it implied
/// between the other variables.
template <Coefficient T>
AbstractElement<T> forget(const AbstractElement<T>& a, std::size_t k) {
    require_variable(a, k);
    if (a.is_bottom()) {
        return a;
    }
    const Dbm<T>& m = a.matrix();
    const std::size_t n = m.dim();
    Dbm<T> r = m;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == k && j == k) {
                continue; // keeps m(k,k): 0 on closed input, +inf on top
            }
            if (i == k || j == k) {
                r.set(i, j, Bound<T>::infinity());
            } else {
                r.tighten(i, j, m.at(i, k) + m.at(k, j));
            }
        }
    }
    return r;
}

template <Coefficient T>
AbstractElement<T> guard(const AbstractElement<T>& a, const GuardAtom<T>& g) {
    using Kind = typename GuardAtom<T>::Kind;
    if (g.kind == Kind::unsupported || a.is_bottom()) {
        return a;
    }
    if (g.kind == Kind::infeasible) {
        return AbstractElement<T>::bottom(a.dim());
    }
    if (g.i == g.j) {
        throw std::invalid_argument("guard v_j - v_i needs distinct variables");
    }
    if (g.i >= a.dim() || g.j >= a.dim()) {
        throw std::out_of_range("guard variable out of range");
    }
    Dbm<T> r = a.matrix();
    r.tighten(g.i, g.j, Bound<T>{g.c});
    if (g.kind == Kind::equal) {
        r.tighten(g.j, g.i, Bound<T>{checked_neg(g.c)});
    }
    return r;
}

/// Conjunctions apply in sequence and disjunctions join the per-branch
/// results. Negations are pushed to the atoms first.
template <Coefficient T>
AbstractElement<T> guard(const AbstractElement<T>& a, const Condition& c) {
    if (a.is_bottom()) {
        return a;
    }
    switch (c.kind()) {
    case Condition::Kind::truth: return a;
    case Condition::Kind::falsity: return AbstractElement<T>::bottom(a.dim());
    case Condition::Kind::atom: return guard(a, make_guard_atom<T>(c.comparison()));
    case Condition::Kind::conjunction: return guard(guard(a, c.lhs()), c.rhs());
    case Condition::Kind::disjunction: return join(guard(a, c.lhs()), guard(a, c.rhs()));
    case Condition::Kind::negation: return guard(a, normalize_condition(c));
    }
    return a;
}

/// Abstract effect of v_k := e. Exact for e = v_k + c, v_j + c and c;
/// otherwise v_k gets the interval of e evaluated on the projections.
template <Coefficient T>
AbstractElement<T> assign(const AbstractElement<T>& a, std::size_t k, const Expr& e) {
    require_variable(a, k);
    if (a.is_bottom()) {
        return a;
    }
    const auto form = linearize(e);
    if (form && form->coeffs.size() <= 1) {
        const T c = coefficient<T>(form->constant);
        if (form->coeffs.empty() || form->coeffs.begin()->second == 1) {
            const std::size_t j = form->coeffs.empty() ? 0 : form->coeffs.begin()->first;
            if (j >= a.dim()) {
                throw std::out_of_range("variable index " + std::to_string(j) + " out of range");
            }
            if (j == k) {
                const Bound<T> plus{c};
                const Bound<T> minus{checked_neg(c)};
                Dbm<T> r = a.matrix();
                for (std::size_t x = 0; x < r.dim(); ++x) {
                    if (x == k) {
                        continue;
                    }
                    r.set(k, x, r.at(k, x) + minus);
                    r.set(x, k, r.at(x, k) + plus);
                }
                return r;
            }
            Dbm<T> r = forget(a, k).matrix();
            r.tighten(j, k, Bound<T>{c});
            r.tighten(k, j, Bound<T>{checked_neg(c)});
            return r;
        }
    }
    const auto closed = close(a.matrix());
    if (!closed) {
        return AbstractElement<T>::bottom(a.dim());
    }
    const Interval<T> range =
        eval_interval<T>(e, [&](std::size_t v) {
            if (v == 0 || v >= a.dim()) {
                throw std::out_of_range("variable index " + std::to_string(v) + " out of range");
            }
            return project(*closed, v);
        });
    Dbm<T> r = forget(AbstractElement<T>(closed->matrix()), k).matrix();
    r.set(0, k, range.upper_bound());
    r.set(k, 0, range.negated_lower_bound());
    return r;
}

/// Best abstraction of a finite set of points (each of length dim - 1).
template <Coefficient T>
NormalizedElement<T> alpha_points(std::size_t dim, std::span<const std::vector<T>> points) {
    if (points.empty()) {
        return NormalizedElement<T>::bottom(dim);
    }
    for (const auto& p : points) {
        if (p.size() + 1 != dim) {
            throw std::invalid_argument("point length does not match dimension");
        }
    }
    const auto coord = [](const std::vector<T>& p, std::size_t i) { return i == 0 ? T{} : p[i - 1]; };
    Dbm<T> m = Dbm<T>::top(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            std::optional<T> best;
            for (const auto& p : points) {
                T d = checked_sub(coord(p, j), coord(p, i));
                if (!best || *best < d) {
                    best = std::move(d);
                }
            }
            m.set(i, j, Bound<T>{*best});
        }
    }
    return ClosedDbm<T>{typename ClosedDbm<T>::TrustClosed{}, std::move(m)};
}

template <Coefficient T>
NormalizedElement<T> alpha_points(std::size_t dim, const std::vector<std::vector<T>>& points) {
    return alpha_points(dim, std::span<const std::vector<T>>(points));
}

} // namespace dbmai
