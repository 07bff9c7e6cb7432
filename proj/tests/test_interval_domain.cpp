// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <random>

#include "dbmai/interval_domain.hpp"

using namespace dbmai;

using Iv = Interval<Integer>;
using Env = BoxEnv<Integer>;
using Atom = GuardAtom<Integer>;

namespace {

const std::optional<Integer> none = std::nullopt;

Expr var(std::size_t k) { return Expr::variable(k); }
Expr num(Integer c) { return Expr::constant(c); }

} // namespace

TEST_CASE("interval widening") {
    CHECK(iv_widen(Iv::between(0, 1), Iv::between(0, 2)) == Iv::between(0, none));
    CHECK(iv_widen(Iv::between(0, 5), Iv::between(0, 5)) == Iv::between(0, 5));
    CHECK(iv_widen(Iv::between(0, 5), Iv::between(-1, 3)) == Iv::between(none, 5));
    CHECK_THROWS(iv_widen(Iv::empty(), Iv::between(0, 1)));
}

TEST_CASE("interval narrowing") {
    CHECK(iv_narrow(Iv::between(0, none), Iv::between(2, 10)) == Iv::between(0, 10));
    CHECK(iv_narrow(Iv::top(), Iv::between(2, 10)) == Iv::between(2, 10));
    CHECK(iv_narrow(Iv::between(0, 4), Iv::between(2, 10)) == Iv::between(0, 4));
}

TEST_CASE("interval arithmetic") {
    const Env env = Env::of({Iv::between(1, 2), Iv::between(3, 4), Iv::between(-1, 2)});
    CHECK(iv_eval(Expr::add(var(1), var(2)), env) == Iv::between(4, 6));
    CHECK(iv_eval(Expr::multiply(var(3), var(2)), env) == Iv::between(-4, 8));
    CHECK(iv_eval(num(7), env) == Iv::point(7));
    CHECK(iv_eval(Expr::negate(var(3)), env) == Iv::between(-2, 1));
    CHECK(iv_eval(Expr::subtract(var(1), var(2)), env) == Iv::between(-3, -1));

    const Env unbounded = Env::of({Iv::between(0, none), Iv::point(0)});
    CHECK(iv_eval(Expr::multiply(var(1), var(2)), unbounded) == Iv::point(0));
    const Integer big = std::numeric_limits<Integer>::max();
    const Env huge = Env::of({Iv::between(big - 1, big), Iv::point(2)});
    CHECK(iv_eval(Expr::multiply(var(1), var(2)), huge).is_top());
}

TEST_CASE("box transfer functions") {
    const Env v = Env::of({Iv::between(0, 9)});
    CHECK(guard(v, Atom::upper(1, 4)).at(1) == Iv::between(0, 4));
    CHECK(assign(v, 1, Expr::add(var(1), num(1))).at(1) == Iv::between(1, 10));
    CHECK(guard(Env::of({Iv::between(5, 9)}), Atom::upper(1, 4)).is_bottom());

    // x - y <= 1 with y in [0,2] bounds x by 3 and y from below by x's lower bound - 1.
    const Env xy = Env::of({Iv::between(0, 9), Iv::between(0, 2)});
    const Env r = guard(xy, Atom::diff(1, 2, 1));
    CHECK(r.at(1) == Iv::between(0, 3));
    CHECK(r.at(2) == Iv::between(0, 2));
}

TEST_CASE("box lattice") {
    const Env a = Env::of({Iv::between(0, 2)});
    const Env b = Env::of({Iv::between(1, 5)});
    CHECK(join(a, b).at(1) == Iv::between(0, 5));
    CHECK(meet(a, b).at(1) == Iv::between(1, 2));
    CHECK(meet(a, Env::of({Iv::between(3, 4)})).is_bottom());
    CHECK(leq(a, join(a, b)));
    CHECK_FALSE(leq(join(a, b), a));
    CHECK(widen(a, b).at(1) == Iv::between(0, none));
    CHECK(Env::of({Iv::empty()}).is_bottom());
}

TEST_CASE("box rendering") {
    const std::vector<std::string> names{"", "x", "y"};
    CHECK(render_all(Env::of({Iv::between(0, 2), Iv::top()}), names) == std::vector<std::string>{"x in [0,2]"});
    CHECK(render_all(Env::bottom(3), names) == std::vector<std::string>{"bottom"});
}

TEST_CASE("widening chains stabilize within two steps per bound") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<Integer> value(-20, 20);
    for (int trial = 0; trial < 200; ++trial) {
        Iv x = Iv::point(value(rng));
        int changes = 0;
        for (int i = 0; i < 50; ++i) {
            const Integer a = value(rng);
            const Integer b = value(rng);
            const Iv next = iv_widen(x, Iv::between(std::min(a, b), std::max(a, b)));
            if (!(next == x)) {
                ++changes;
            }
            CHECK(x.subset_of(next));
            x = next;
        }
        CHECK(changes <= 2);
    }
}
