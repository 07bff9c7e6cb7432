// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dbmai/condition.hpp"

namespace dbmai {

Relation complement(Relation rel) {
    switch (rel) {
    case Relation::lt: return Relation::ge;
    case Relation::le: return Relation::gt;
    case Relation::eq: return Relation::ne;
    case Relation::ne: return Relation::eq;
    case Relation::ge: return Relation::lt;
    case Relation::gt: return Relation::le;
    }
    return rel;
}

const char* relation_symbol(Relation rel) {
    switch (rel) {
    case Relation::lt: return "<";
    case Relation::le: return "<=";
    case Relation::eq: return "==";
    case Relation::ne: return "!=";
    case Relation::ge: return ">=";
    case Relation::gt: return ">";
    }
    return "?";
}

Condition Condition::truth() { return Condition(std::make_shared<const Node>(Node{Kind::truth, {}, {}, {}})); }

Condition Condition::falsity() { return Condition(std::make_shared<const Node>(Node{Kind::falsity, {}, {}, {}})); }

Condition Condition::atom(Comparison c) {
    return Condition(std::make_shared<const Node>(Node{Kind::atom, std::make_shared<const Comparison>(std::move(c)), {}, {}}));
}

Condition Condition::conjunction(Condition lhs, Condition rhs) {
    return Condition(std::make_shared<const Node>(Node{Kind::conjunction, {}, std::make_shared<const Condition>(std::move(lhs)),
                                                       std::make_shared<const Condition>(std::move(rhs))}));
}

Condition Condition::disjunction(Condition lhs, Condition rhs) {
    return Condition(std::make_shared<const Node>(Node{Kind::disjunction, {}, std::make_shared<const Condition>(std::move(lhs)),
                                                       std::make_shared<const Condition>(std::move(rhs))}));
}

Condition Condition::negation(Condition operand) {
    return Condition(
        std::make_shared<const Node>(Node{Kind::negation, {}, std::make_shared<const Condition>(std::move(operand)), {}}));
}

bool operator==(const Condition& a, const Condition& b) {
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.kind() != b.kind()) {
        return false;
    }
    switch (a.kind()) {
    case Condition::Kind::truth:
    case Condition::Kind::falsity: return true;
    case Condition::Kind::atom: return a.comparison() == b.comparison();
    case Condition::Kind::negation: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

namespace {

Condition push(const Condition& c, bool negated) {
    switch (c.kind()) {
    case Condition::Kind::truth: return negated ? Condition::falsity() : c;
    case Condition::Kind::falsity: return negated ? Condition::truth() : c;
    case Condition::Kind::atom: {
        if (!negated) {
            return c;
        }
        const Comparison& cmp = c.comparison();
        return Condition::atom(Comparison{cmp.lhs, complement(cmp.rel), cmp.rhs});
    }
    case Condition::Kind::negation: return push(c.lhs(), !negated);
    case Condition::Kind::conjunction:
        return negated ? Condition::disjunction(push(c.lhs(), true), push(c.rhs(), true))
                       : Condition::conjunction(push(c.lhs(), false), push(c.rhs(), false));
    case Condition::Kind::disjunction:
        return negated ? Condition::conjunction(push(c.lhs(), true), push(c.rhs(), true))
                       : Condition::disjunction(push(c.lhs(), false), push(c.rhs(), false));
    }
    return c;
}

} // namespace

Condition normalize_condition(const Condition& c) { return push(c, false); }

bool is_negation_normal(const Condition& c) {
    switch (c.kind()) {
    case Condition::Kind::negation: return false;
    case Condition::Kind::conjunction:
    case Condition::Kind::disjunction: return is_negation_normal(c.lhs()) && is_negation_normal(c.rhs());
    default: return true;
    }
}

} // namespace dbmai
