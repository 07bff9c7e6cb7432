// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <concepts>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "dbmai/cfg.hpp"

namespace dbmai {

struct FlowEdge {
    std::size_t src;
    std::size_t dst;
    EdgeLabel label;
};

/// Graph the solver iterates over: a single Cfg or an interleaving product.
struct FlowGraph {
    std::size_t node_count = 1;
    std::size_t entry = 0;
    std::vector<FlowEdge> edges;
    std::vector<std::string> node_labels;
};

FlowGraph flow_graph(const Cfg& cfg);
FlowGraph flow_graph(std::span<const Cfg> cfgs, const ProductCfg& product);

/// Nodes reachable from the entry in reverse postorder of a depth-first
/// traversal that follows edges in declaration order.
std::vector<std::size_t> reverse_postorder(const FlowGraph& g);

/// Targets of the back edges of that traversal. Every cycle through a
/// reachable node contains at least one of them.
std::set<std::size_t> select_widening_points(const FlowGraph& g);

struct FixpointOptions {
    std::size_t widening_delay = 1;
    std::size_t descending_steps = 2;
};

/// Operations the solver needs from an abstract domain.
template <typename D>
concept AnalysisDomain = requires(const D& d, const typename D::Value& v, const EdgeLabel& l) {
    { d.bottom() } -> std::convertible_to<typename D::Value>;
    { d.join(v, v) } -> std::convertible_to<typename D::Value>;
    { d.widen(v, v) } -> std::convertible_to<typename D::Value>;
    { d.narrow(v, v) } -> std::convertible_to<typename D::Value>;
    { d.transfer(l, v) } -> std::convertible_to<typename D::Value>;
    { d.normalize(v) } -> std::convertible_to<typename D::Value>;
};

template <typename Value>
struct FixpointStats {
    std::size_t ascending_updates = 0;
    std::size_t descending_passes = 0;
};

/// Chaotic iteration in reverse postorder with a worklist. Widening points
/// take `old widen incoming` once `widening_delay` plain joins have been
/// applied on top of their first value; the stored accumulator is whatever the domain's widen returns and
/// is not normalized further. A bounded descending phase then applies
/// `old narrow incoming` at every node.
template <AnalysisDomain D>
std::vector<typename D::Value> solve(const FlowGraph& g, const D& domain, const typename D::Value& init,
                                     const FixpointOptions& opts, FixpointStats<typename D::Value>* stats = nullptr) {
    using Value = typename D::Value;
    const auto order = reverse_postorder(g);
    const auto widening = select_widening_points(g);
    std::vector<std::size_t> rank(g.node_count, g.node_count);
    for (std::size_t k = 0; k < order.size(); ++k) {
        rank[order[k]] = k;
    }
    std::vector<std::vector<std::size_t>> incoming_edges(g.node_count);
    std::vector<std::vector<std::size_t>> successors(g.node_count);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        incoming_edges[g.edges[e].dst].push_back(e);
        successors[g.edges[e].src].push_back(g.edges[e].dst);
    }

    std::vector<Value> values(g.node_count, domain.bottom());
    const auto incoming = [&](std::size_t v) {
        Value acc = v == g.entry ? domain.normalize(init) : domain.bottom();
        for (const std::size_t e : incoming_edges[v]) {
            const FlowEdge& edge = g.edges[e];
            acc = domain.join(acc, domain.normalize(domain.transfer(edge.label, values[edge.src])));
        }
        return domain.normalize(acc);
    };

    const auto by_rank = [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; };
    std::set<std::size_t, decltype(by_rank)> worklist(by_rank);
    worklist.insert(g.entry);
    std::vector<std::size_t> joins(g.node_count, 0);
    while (!worklist.empty()) {
        const std::size_t v = *worklist.begin();
        worklist.erase(worklist.begin());
        const Value in = incoming(v);
        const Value& old = values[v];
        const bool first = old == domain.bottom();
        Value next = widening.contains(v) && !first && joins[v] >= opts.widening_delay
                         ? domain.normalize(domain.widen(old, in))
                         : domain.join(old, in);
        if (next == old) {
            continue;
        }
        if (!first) {
            ++joins[v];
        }
        if (stats) {
            ++stats->ascending_updates;
        }
        values[v] = std::move(next);
        for (const std::size_t s : successors[v]) {
            worklist.insert(s);
        }
    }

    for (std::size_t pass = 0; pass < opts.descending_steps; ++pass) {
        bool changed = false;
        for (const std::size_t v : order) {
            Value next = domain.normalize(domain.narrow(values[v], incoming(v)));
            if (!(next == values[v])) {
                values[v] = std::move(next);
                changed = true;
            }
        }
        if (stats) {
            ++stats->descending_passes;
        }
        if (!changed) {
            break;
        }
    }
    return values;
}

} // namespace dbmai
