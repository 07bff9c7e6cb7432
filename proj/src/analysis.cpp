// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dbmai/analysis.hpp"

namespace dbmai {

ProgramModel build_model(Program program) {
    ProgramModel m;
    m.init = build_cfg(program.init);
    for (const auto& p : program.processes) {
        m.processes.push_back(build_cfg(p.body));
    }
    m.product = interleave(m.processes);
    m.graph = flow_graph(m.processes, m.product);
    m.program = std::move(program);
    return m;
}

const char* to_string(Verdict v) { return v == Verdict::proved ? "proved" : "unknown"; }

namespace {

template <typename D>
bool refutes(const D& domain, const Condition& cond, const typename D::Value& state) {
    const Condition negated = normalize_condition(Condition::negation(cond));
    return domain.normalize(domain.test(negated, state)).is_bottom();
}

template <typename D>
struct Run {
    std::vector<typename D::Value> values;
    std::vector<AssertVerdict> asserts;
};

template <typename D>
Run<D> run(const ProgramModel& m, const D& domain, const typename D::Value& top, const AnalysisOptions& opts) {
    Run<D> out;
    const FlowGraph init_graph = flow_graph(m.init);
    const auto init_values = solve(init_graph, domain, top, opts.fixpoint());
    for (const auto& site : m.init.asserts) {
        const bool proved = refutes(domain, site.cond, init_values[site.node]);
        out.asserts.push_back({"init", site.line, proved ? Verdict::proved : Verdict::unknown});
    }
    const auto start = m.init.exit ? init_values[*m.init.exit] : domain.bottom();

    out.values = solve(m.graph, domain, start, opts.fixpoint());
    for (std::size_t p = 0; p < m.processes.size(); ++p) {
        for (const auto& site : m.processes[p].asserts) {
            bool proved = true;
            for (std::size_t n = 0; n < m.product.node_count() && proved; ++n) {
                if (m.product.decode(n)[p] == site.node) {
                    proved = refutes(domain, site.cond, out.values[n]);
                }
            }
            out.asserts.push_back({m.program.processes[p].name, site.line, proved ? Verdict::proved : Verdict::unknown});
        }
    }
    return out;
}

} // namespace

template <Coefficient T>
AnalysisResult<NormalizedElement<T>> analyze_dbm(const ProgramModel& model, const AnalysisOptions& opts) {
    const std::size_t dim = model.program.dim();
    const DbmAnalysisDomain<T> domain{dim};
    auto r = run(model, domain, AbstractElement<T>::top(dim), opts);
    AnalysisResult<NormalizedElement<T>> out;
    out.point_labels = model.graph.node_labels;
    for (const auto& v : r.values) {
        out.values.push_back(NormalizedElement<T>::normalize(v));
    }
    out.asserts = std::move(r.asserts);
    return out;
}

template <Coefficient T>
AnalysisResult<BoxEnv<T>> analyze_box(const ProgramModel& model, const AnalysisOptions& opts) {
    const std::size_t dim = model.program.dim();
    const BoxAnalysisDomain<T> domain{dim};
    auto r = run(model, domain, BoxEnv<T>::top(dim), opts);
    return {model.graph.node_labels, std::move(r.values), std::move(r.asserts)};
}

template <Coefficient T>
ComparisonReport<T> compare_domains(const ProgramModel& model, const AnalysisOptions& opts) {
    const auto dbm = analyze_dbm<T>(model, opts);
    const auto box = analyze_box<T>(model, opts);
    const std::size_t dim = model.program.dim();
    ComparisonReport<T> report;
    for (std::size_t n = 0; n < dbm.values.size(); ++n) {
        PointComparison<T> point{dbm.point_labels[n], {}, false};
        const auto& d = dbm.values[n];
        const auto& b = box.values[n];
        bool tighter = false;
        for (std::size_t k = 1; k < dim; ++k) {
            const Interval<T> dp = d.is_bottom() ? Interval<T>::empty() : project(d.closed(), k);
            const Interval<T> bp = b.is_bottom() ? Interval<T>::empty() : b.at(k);
            const bool contained = dp.subset_of(bp);
            const bool strict = contained && !bp.subset_of(dp);
            report.violations += contained ? 0 : 1;
            tighter = tighter || strict;
            point.vars.push_back({k, dp, bp, contained, strict});
        }
        if (!d.is_bottom() && !b.is_bottom()) {
            Dbm<T> as_dbm = Dbm<T>::top(dim);
            for (std::size_t k = 1; k < dim; ++k) {
                as_dbm.set(0, k, b.at(k).upper_bound());
                as_dbm.set(k, 0, b.at(k).negated_lower_bound());
            }
            point.relational_gain = includes(d.closed().matrix(), as_dbm) && !includes(as_dbm, d.closed().matrix());
        }
        if (tighter || point.relational_gain) {
            ++report.improvements;
        }
        report.points.push_back(std::move(point));
    }
    return report;
}

template AnalysisResult<NormalizedElement<Integer>> analyze_dbm<Integer>(const ProgramModel&, const AnalysisOptions&);
template AnalysisResult<NormalizedElement<Rational>> analyze_dbm<Rational>(const ProgramModel&,
                                                                           const AnalysisOptions&);
template AnalysisResult<BoxEnv<Integer>> analyze_box<Integer>(const ProgramModel&, const AnalysisOptions&);
template AnalysisResult<BoxEnv<Rational>> analyze_box<Rational>(const ProgramModel&, const AnalysisOptions&);
template ComparisonReport<Integer> compare_domains<Integer>(const ProgramModel&, const AnalysisOptions&);
template ComparisonReport<Rational> compare_domains<Rational>(const ProgramModel&, const AnalysisOptions&);

} // namespace dbmai
