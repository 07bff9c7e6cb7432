// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <random>

#include "builders.hpp"
#include "dbmai/constraints.hpp"
#include "dbmai/domain.hpp"
#include "oracles.hpp"

using namespace dbmai;
using dbmai::testing::box;
using dbmai::testing::element;
using dbmai::testing::inf;
using dbmai::testing::normalized;
using dbmai::testing::rows;

using Elem = AbstractElement<Integer>;
using Norm = NormalizedElement<Integer>;
using Atom = GuardAtom<Integer>;

namespace {

constexpr Integer lo = -10;
constexpr Integer hi = 10;

Elem random_element(std::mt19937_64& rng, std::size_t dim) {
    // Bounded so that enumeration over [lo,hi] sees the whole domain.
    Dbm<Integer> m = oracle::random_dbm(rng, dim, -4, 4, 0.4);
    for (std::size_t k = 1; k < dim; ++k) {
        m.tighten(0, k, Bound<Integer>{5});
        m.tighten(k, 0, Bound<Integer>{5});
    }
    return m;
}

Expr var(std::size_t k) { return Expr::variable(k); }
Expr num(Integer c) { return Expr::constant(c); }

std::vector<std::string> render(const Elem& a, std::vector<std::string> names) {
    return render_all(Norm::normalize(a), names);
}

} // namespace

TEST_CASE("meet") {
    const Elem m = box({{1, 4}, {std::nullopt, 2}});
    CHECK(meet(m, Elem::top(3)) == m);
    CHECK(meet(m, Elem::bottom(3)).is_bottom());

    const Elem a = box({{std::nullopt, 4}});
    const Elem b = box({{5, 3}});
    const Elem r = meet(a, b);
    CHECK(r.denotes_empty());
    CHECK(oracle::points(r, lo, hi).empty());
}

TEST_CASE("join of two states is their best abstraction") {
    const Elem s0 = box({{0, 0}, {0, 0}});
    const Elem s1 = box({{1, 1}, {0, 0}});
    const Norm r = Norm::normalize(join(s0, s1));
    CHECK(r == alpha_points<Integer>(3, {{0, 0}, {1, 0}}));
    CHECK(render(r.element(), {"", "y1", "y2"}) ==
          std::vector<std::string>{"y1 in [0,1]", "y2 in [0,0]", "y1 - y2 <= 1", "y2 - y1 <= 0"});
    CHECK(join(s0, Elem::bottom(3)) == normalized(s0.matrix()).element());
    CHECK(join(s0, s0) == close(s0.matrix())->matrix());
}

TEST_CASE("widening keeps stable entries") {
    const Elem a = rows({{0, 5}, {inf, 0}});
    CHECK(widen(a, a) == a);
    CHECK(widen(a, Elem(rows({{0, 3}, {inf, 0}}))).matrix().at(0, 1) == Bound<Integer>{5});
    CHECK(widen(a, Elem(rows({{0, 7}, {inf, 0}}))).matrix().at(0, 1).is_infinite());
    CHECK(widen(Elem::bottom(2), a) == a);
    CHECK(widen(a, Elem::bottom(2)) == a);
}

TEST_CASE("narrowing refines only infinite entries") {
    const Elem m = box({{1, 4}});
    CHECK(narrow(Elem::top(2), m).matrix().at(0, 1) == Bound<Integer>{4});
    CHECK(narrow(m, m) == m);
    const Elem a = rows({{0, inf}, {3, 0}});
    const Elem b = rows({{0, 7}, {2, 0}});
    CHECK(narrow(a, b) == Elem(rows({{0, 7}, {3, 0}})));
    CHECK(narrow(Elem::bottom(2), a).is_bottom());
    CHECK(narrow(a, Elem::bottom(2)).is_bottom());
}

TEST_CASE("forget drops one variable and keeps the rest") {
    CHECK(forget(Elem::top(3), 2) == Elem::top(3));
    Dbm<Integer> m = box({{1, 4}, {1, 3}});
    m.set(2, 1, Bound<Integer>{1}); // v1 - v2 <= 1
    const Elem r = forget(Elem(m), 2);
    CHECK(project(r.matrix(), 1) == Interval<Integer>::between(1, 4));
    CHECK(project(r.matrix(), 2).is_top());
    std::set<oracle::Point> expected;
    for (const auto& p : oracle::points(m, lo, hi)) {
        for (Integer v = lo; v <= hi; ++v) {
            expected.insert({p[0], v});
        }
    }
    CHECK(oracle::points(r, lo, hi) == expected);
    CHECK_THROWS_AS(forget(Elem::top(3), 0), std::out_of_range);
}

TEST_CASE("guards") {
    const Elem g = guard(Elem::top(3), Atom::diff(1, 2, 1));
    CHECK(g.matrix().at(2, 1) == Bound<Integer>{1});
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (i != 2 || j != 1) {
                CHECK(g.matrix().at(i, j).is_infinite());
            }
        }
    }
    const Elem a = box({{0, 5}});
    CHECK(guard(a, Atom::unsupported()) == a);
    CHECK(guard(a, Atom::infeasible()).is_bottom());
    CHECK(project(guard(a, Atom::eq(1, 0, 3)).matrix(), 1) == Interval<Integer>::point(3));
}

TEST_CASE("compound conditions") {
    const Elem a = box({{0, 9}, {0, 9}});
    const auto x_le_2 = Condition::atom({var(1), Relation::le, num(2)});
    const auto x_ge_7 = Condition::atom({var(1), Relation::ge, num(7)});
    const Elem both = guard(a, Condition::conjunction(x_le_2, x_ge_7));
    CHECK(Norm::normalize(both).is_bottom());
    const Elem either = guard(a, Condition::disjunction(x_le_2, x_ge_7));
    CHECK(project(either.matrix(), 1) == Interval<Integer>::between(0, 9));
    const Elem negated = guard(a, Condition::negation(Condition::atom({var(1), Relation::gt, num(2)})));
    CHECK(project(negated.matrix(), 1) == Interval<Integer>::between(0, 2));
    const Elem diseq = guard(a, Condition::atom({var(1), Relation::ne, num(3)}));
    CHECK(diseq == a);
}

TEST_CASE("assignments") {
    const Elem y2_zero = box({{std::nullopt, std::nullopt}, {0, 0}});
    const Elem r = assign(y2_zero, 1, Expr::add(var(2), num(1)));
    CHECK(Norm::normalize(r) == alpha_points<Integer>(3, {{1, 0}}));

    const Elem a = box({{1, 2}, {3, 4}, {std::nullopt, std::nullopt}});
    CHECK(assign(a, 1, Expr::add(var(1), num(0))) == a);

    const Elem prod = assign(a, 3, Expr::multiply(var(1), var(2)));
    const auto closed = close(prod.matrix());
    REQUIRE(closed);
    CHECK(project(*closed, 3) == Interval<Integer>::between(3, 8));
    CHECK(closed->at(1, 3) == Bound<Integer>{8 - 1}); // only the box-implied relation remains
    CHECK(closed->at(3, 1) == Bound<Integer>{2 - 3});
}

TEST_CASE("alpha of points") {
    CHECK(alpha_points<Integer>(3, std::vector<std::vector<Integer>>{}).is_bottom());
    const auto z = alpha_points<Integer>(3, {{0, 0}});
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(z.closed().at(i, j) == Bound<Integer>{0});
        }
    }
    CHECK_THROWS_AS(alpha_points<Integer>(3, {{0}}), std::invalid_argument);
}

TEST_CASE("constraint rendering") {
    CHECK(render_all(Norm::bottom(3), std::vector<std::string>{"", "x", "y"}) == std::vector<std::string>{"bottom"});
    CHECK(render_all(Norm::top(3), std::vector<std::string>{"", "x", "y"}).empty());
    Dbm<Integer> m = box({{2, std::nullopt}, {1, std::nullopt}});
    m.set(2, 1, Bound<Integer>{1});
    m.set(1, 2, Bound<Integer>{-1});
    CHECK(render(m, {"", "y1", "y2"}) ==
          std::vector<std::string>{"y1 in [2,+inf)", "y2 in [1,+inf)", "y1 - y2 = 1"});
}

TEST_CASE("random elements: lattice laws") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 2 + trial % 3;
        const Elem a = random_element(rng, dim);
        const Elem b = random_element(rng, dim);
        const Elem c = random_element(rng, dim);
        CHECK(sem_equal(meet(a, b), meet(b, a)));
        CHECK(sem_equal(join(a, b), join(b, a)));
        CHECK(sem_equal(meet(meet(a, b), c), meet(a, meet(b, c))));
        CHECK(sem_equal(join(join(a, b), c), join(a, join(b, c))));
        CHECK(sem_equal(meet(a, a), a));
        CHECK(sem_equal(join(a, a), a));
        CHECK(sem_equal(meet(a, join(a, b)), a));
        CHECK(sem_equal(join(a, meet(a, b)), a));
    }
}

TEST_CASE("random elements: meet is exact, join is optimal and closed") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 2 + trial % 3;
        const Elem a = random_element(rng, dim);
        const Elem b = random_element(rng, dim);
        const auto pa = oracle::points(a, lo, hi);
        const auto pb = oracle::points(b, lo, hi);
        std::set<oracle::Point> both;
        std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::inserter(both, both.end()));
        CHECK(oracle::points(meet(a, b), lo, hi) == both);

        std::vector<std::vector<Integer>> all(pa.begin(), pa.end());
        all.insert(all.end(), pb.begin(), pb.end());
        const Elem j = join(a, b);
        CHECK(Norm::normalize(j) == alpha_points<Integer>(dim, all));
        if (!j.is_bottom()) {
            CHECK(is_closed(j.matrix()));
        }
    }
}

TEST_CASE("random elements: widening and narrowing") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = 2 + trial % 3;
        Elem x = random_element(rng, dim);
        const Elem start = x;
        std::vector<Elem> seen;
        int stable_after = -1;
        for (int i = 0; i < 60; ++i) {
            const Elem n = random_element(rng, dim);
            seen.push_back(n);
            const Elem next = widen(x, Norm::normalize(n).element());
            if (next == x && stable_after < 0) {
                stable_after = i;
            }
            x = next;
        }
        CHECK(stable_after >= 0);
        CHECK(includes(start, x));
        for (const auto& n : seen) {
            CHECK(includes(n, x));
        }

        const Elem b = random_element(rng, dim);
        const Elem a = join(b, random_element(rng, dim));
        const Elem r = narrow(a, b);
        CHECK(includes(b, r));
        CHECK(includes(r, a));
    }
}

TEST_CASE("random elements: transfer functions are sound and exact where promised") {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<Integer> cst(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 3;
        const Elem a = random_element(rng, dim);
        const auto pts = oracle::points(a, lo, hi);
        const std::size_t j = 1 + trial % 2;
        const std::size_t i = (j % 2) + 1;
        const Integer c = cst(rng);

        // Guards v_j - v_i <= c and v_j - v_0 = c are exact.
        for (const Atom g : {Atom::diff(j, i, c), Atom::eq(j, 0, c), Atom::lower(i, c)}) {
            std::set<oracle::Point> image;
            for (const auto& p : pts) {
                const auto x = [&](std::size_t k) { return k == 0 ? Integer{0} : p[k - 1]; };
                const bool ok = g.kind == Atom::Kind::equal ? x(g.j) - x(g.i) == g.c : x(g.j) - x(g.i) <= g.c;
                if (ok) {
                    image.insert(p);
                }
            }
            CHECK(oracle::points(guard(a, g), lo, hi) == image);
        }

        // v_j := v_j + c, v_j := v_i + c and v_j := c are exact; v_j := v_1 * v_2 is sound.
        const std::vector<std::pair<Expr, bool>> rhs{
            {Expr::add(var(j), num(c)), true},
            {Expr::add(var(i), num(c)), true},
            {num(c), true},
            {Expr::multiply(var(1), var(2)), false},
        };
        for (const auto& [e, exact] : rhs) {
            std::set<oracle::Point> image;
            for (const auto& p : pts) {
                auto q = p;
                q[j - 1] = oracle::eval(e, p);
                image.insert(q);
            }
            const Elem r = assign(a, j, e);
            for (const auto& q : image) {
                CHECK(oracle::satisfies(r, q));
            }
            if (exact) {
                const auto got = oracle::points(r, lo - 5, hi + 5);
                std::set<oracle::Point> inside;
                for (const auto& q : image) {
                    inside.insert(q);
                }
                CHECK(got == inside);
            }
        }
    }
}

TEST_CASE("random point sets: alpha output is closed and exact on its own points") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = oracle::random_bounded_closed(rng, 3, 4);
        const auto pts = oracle::points(m, -4, 4);
        const auto alpha = alpha_points<Integer>(3, std::vector<std::vector<Integer>>(pts.begin(), pts.end()));
        REQUIRE_FALSE(alpha.is_bottom());
        CHECK(is_closed(alpha.closed().matrix()));
        CHECK(alpha.closed().matrix() == m);
    }
}
