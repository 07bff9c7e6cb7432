// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dbmai/ast.hpp"
#include "dbmai/cfg.hpp"
#include "dbmai/domain.hpp"
#include "dbmai/fixpoint.hpp"
#include "dbmai/interval_domain.hpp"

namespace dbmai {

enum class DomainKind { dbm, interval };

struct AnalysisOptions {
    DomainKind domain = DomainKind::dbm;
    std::size_t widening_delay = 1;
    std::size_t descending_steps = 2;
    CoefficientMode mode = CoefficientMode::integer;

    [[nodiscard]] FixpointOptions fixpoint() const { return {widening_delay, descending_steps}; }
};

// =============================================================================
// Domain adapters for the solver
// =============================================================================

template <Coefficient T>
struct DbmAnalysisDomain {
    using Value = AbstractElement<T>;
    std::size_t dim;

    [[nodiscard]] Value bottom() const { return Value::bottom(dim); }
    [[nodiscard]] Value join(const Value& a, const Value& b) const { return dbmai::join(a, b); }
    /// The right argument is closed; the result is left as is.
    [[nodiscard]] Value widen(const Value& old, const Value& in) const {
        return dbmai::widen(old, NormalizedElement<T>::normalize(in).element());
    }
    [[nodiscard]] Value narrow(const Value& old, const Value& in) const {
        return NormalizedElement<T>::normalize(dbmai::narrow(old, NormalizedElement<T>::normalize(in).element()))
            .element();
    }
    /// Empty matrices become bottom; non-empty ones keep their representation.
    [[nodiscard]] Value normalize(const Value& v) const { return v.denotes_empty() ? bottom() : v; }
    [[nodiscard]] Value transfer(const EdgeLabel& label, const Value& v) const {
        return std::visit(
            [&](const auto& l) -> Value {
                using L = std::decay_t<decltype(l)>;
                if constexpr (std::is_same_v<L, AssignLabel>) {
                    return assign(v, l.var, l.value);
                } else if constexpr (std::is_same_v<L, GuardLabel>) {
                    return guard(v, l.cond);
                } else {
                    return v;
                }
            },
            label);
    }
    [[nodiscard]] Value test(const Condition& c, const Value& v) const { return guard(v, c); }
};

template <Coefficient T>
struct BoxAnalysisDomain {
    using Value = BoxEnv<T>;
    std::size_t dim;

    [[nodiscard]] Value bottom() const { return Value::bottom(dim); }
    [[nodiscard]] Value join(const Value& a, const Value& b) const { return dbmai::join(a, b); }
    [[nodiscard]] Value widen(const Value& old, const Value& in) const { return dbmai::widen(old, in); }
    [[nodiscard]] Value narrow(const Value& old, const Value& in) const { return dbmai::narrow(old, in); }
    [[nodiscard]] Value normalize(const Value& v) const { return v; }
    [[nodiscard]] Value transfer(const EdgeLabel& label, const Value& v) const {
        return std::visit(
            [&](const auto& l) -> Value {
                using L = std::decay_t<decltype(l)>;
                if constexpr (std::is_same_v<L, AssignLabel>) {
                    return assign(v, l.var, l.value);
                } else if constexpr (std::is_same_v<L, GuardLabel>) {
                    return guard(v, l.cond);
                } else {
                    return v;
                }
            },
            label);
    }
    [[nodiscard]] Value test(const Condition& c, const Value& v) const { return guard(v, c); }
};

// =============================================================================
// Whole-program analysis
// =============================================================================

/// Parsed program with its init graph, per-process graphs and their product.
struct ProgramModel {
    Program program;
    Cfg init;
    std::vector<Cfg> processes;
    ProductCfg product;
    FlowGraph graph;
};

ProgramModel build_model(Program program);

enum class Verdict { proved, unknown };

const char* to_string(Verdict v);

struct AssertVerdict {
    std::string scope; // "init" or the process name
    int line;
    Verdict verdict;
};

template <typename Value>
struct AnalysisResult {
    std::vector<std::string> point_labels;
    std::vector<Value> values;
    std::vector<AssertVerdict> asserts;
};

template <Coefficient T>
AnalysisResult<NormalizedElement<T>> analyze_dbm(const ProgramModel& model, const AnalysisOptions& opts);

template <Coefficient T>
AnalysisResult<BoxEnv<T>> analyze_box(const ProgramModel& model, const AnalysisOptions& opts);

/// Per point and variable: DBM projection against the interval result.
template <Coefficient T>
struct VariableComparison {
    std::size_t var;
    Interval<T> dbm;
    Interval<T> box;
    bool contained;
    bool strictly_tighter;
};

template <Coefficient T>
struct PointComparison {
    std::string label;
    std::vector<VariableComparison<T>> vars;
    /// The DBM denotes a strict subset of the box read back as a DBM.
    bool relational_gain = false;
};

template <Coefficient T>
struct ComparisonReport {
    std::vector<PointComparison<T>> points;
    std::size_t violations = 0;
    std::size_t improvements = 0;
};

template <Coefficient T>
ComparisonReport<T> compare_domains(const ProgramModel& model, const AnalysisOptions& opts);

extern template AnalysisResult<NormalizedElement<Integer>> analyze_dbm<Integer>(const ProgramModel&,
                                                                                const AnalysisOptions&);
extern template AnalysisResult<NormalizedElement<Rational>> analyze_dbm<Rational>(const ProgramModel&,
                                                                                  const AnalysisOptions&);
extern template AnalysisResult<BoxEnv<Integer>> analyze_box<Integer>(const ProgramModel&, const AnalysisOptions&);
extern template AnalysisResult<BoxEnv<Rational>> analyze_box<Rational>(const ProgramModel&, const AnalysisOptions&);
extern template ComparisonReport<Integer> compare_domains<Integer>(const ProgramModel&, const AnalysisOptions&);
extern template ComparisonReport<Rational> compare_domains<Rational>(const ProgramModel&, const AnalysisOptions&);

} // namespace dbmai
