// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dbmai/ast.hpp"

namespace dbmai {

struct AssignLabel {
    std::size_t var;
    Expr value;
};

/// Condition in negation normal form.
struct GuardLabel {
    Condition cond;
};

struct SkipLabel {};

using EdgeLabel = std::variant<AssignLabel, GuardLabel, SkipLabel>;

std::string to_string(const EdgeLabel& label, std::span<const std::string> names);

struct CfgEdge {
    std::size_t src;
    std::size_t dst;
    EdgeLabel label;
};

struct AssertSite {
    std::size_t node;
    Condition cond;
    int line;
};

/// Control-flow graph of one statement list. Node 0 is the entry.
struct Cfg {
    std::size_t node_count = 1;
    std::size_t entry = 0;
    std::vector<CfgEdge> edges;
    std::vector<AssertSite> asserts;
    /// Control point after the last statement; absent when it cannot be reached.
    std::optional<std::size_t> exit;
    std::vector<std::string> diagnostics;
};

/// Loops test their condition at the head node: the body is entered through
/// an edge guarded by the condition and the loop is left through one guarded
/// by its negation. A literal `true` loop has neither the entry guard nor an
/// exit edge, so `while true { a; b; }` is a plain cycle.
Cfg build_cfg(const Block& body);

/// Interleaving product: every product edge moves exactly one process.
struct ProductEdge {
    std::size_t src;
    std::size_t dst;
    std::size_t process;
    std::size_t edge; // index into that process's Cfg::edges
};

class ProductCfg {
  public:
    ProductCfg() = default;
    explicit ProductCfg(std::vector<std::size_t> sizes);

    [[nodiscard]] std::size_t node_count() const { return node_count_; }
    [[nodiscard]] std::size_t entry() const { return 0; }
    [[nodiscard]] std::size_t process_count() const { return sizes_.size(); }
    [[nodiscard]] const std::vector<ProductEdge>& edges() const { return edges_; }

    /// Per-process control points, first process most significant.
    [[nodiscard]] std::vector<std::size_t> decode(std::size_t node) const;
    [[nodiscard]] std::size_t encode(std::span<const std::size_t> locals) const;

    /// "(i,j,...)": even-numbered processes count 0,1,2..., odd-numbered
    /// ones a,b,c...
    [[nodiscard]] std::string label(std::size_t node) const;

  private:
    friend ProductCfg interleave(std::span<const Cfg> cfgs);

    std::vector<std::size_t> sizes_;
    std::size_t node_count_ = 1;
    std::vector<ProductEdge> edges_;
};

ProductCfg interleave(std::span<const Cfg> cfgs);

} // namespace dbmai
