// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dbmai/fixpoint.hpp"

#include <algorithm>
#include <utility>

namespace dbmai {

FlowGraph flow_graph(const Cfg& cfg) {
    FlowGraph g;
    g.node_count = cfg.node_count;
    g.entry = cfg.entry;
    for (const auto& e : cfg.edges) {
        g.edges.push_back({e.src, e.dst, e.label});
    }
    for (std::size_t n = 0; n < cfg.node_count; ++n) {
        g.node_labels.push_back("(" + std::to_string(n) + ")");
    }
    return g;
}

FlowGraph flow_graph(std::span<const Cfg> cfgs, const ProductCfg& product) {
    FlowGraph g;
    g.node_count = product.node_count();
    g.entry = product.entry();
    for (const auto& e : product.edges()) {
        g.edges.push_back({e.src, e.dst, cfgs[e.process].edges[e.edge].label});
    }
    for (std::size_t n = 0; n < product.node_count(); ++n) {
        g.node_labels.push_back(product.label(n));
    }
    return g;
}

namespace {

struct Traversal {
    std::vector<std::size_t> postorder;
    std::set<std::size_t> back_targets;
};

// Iterative DFS; an edge into a node still on the stack is a back edge.
Traversal traverse(const FlowGraph& g) {
    std::vector<std::vector<std::size_t>> succ(g.node_count);
    for (const auto& e : g.edges) {
        succ[e.src].push_back(e.dst);
    }
    enum class Mark { white, grey, black };
    std::vector<Mark> mark(g.node_count, Mark::white);
    Traversal t;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{g.entry, 0}};
    mark[g.entry] = Mark::grey;
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next == succ[node].size()) {
            mark[node] = Mark::black;
            t.postorder.push_back(node);
            stack.pop_back();
            continue;
        }
        const std::size_t s = succ[node][next++];
        if (mark[s] == Mark::grey) {
            t.back_targets.insert(s);
        } else if (mark[s] == Mark::white) {
            mark[s] = Mark::grey;
            stack.emplace_back(s, 0);
        }
    }
    return t;
}

} // namespace

std::vector<std::size_t> reverse_postorder(const FlowGraph& g) {
    auto order = traverse(g).postorder;
    std::reverse(order.begin(), order.end());
    return order;
}

std::set<std::size_t> select_widening_points(const FlowGraph& g) { return traverse(g).back_targets; }

} // namespace dbmai
