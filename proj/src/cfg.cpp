// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dbmai/cfg.hpp"

#include <stdexcept>

#include "dbmai/constraints.hpp"
#include "dbmai/printer.hpp"

namespace dbmai {

std::string to_string(const EdgeLabel& label, std::span<const std::string> names) {
    return std::visit(
        [&](const auto& l) -> std::string {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, AssignLabel>) {
                return variable_name(names, l.var) + " = " + to_source(l.value, names);
            } else if constexpr (std::is_same_v<L, GuardLabel>) {
                return "[" + to_source(l.cond, names) + "]";
            } else {
                return "skip";
            }
        },
        label);
}

namespace {

int line_of(const Stmt& s) {
    return std::visit([](const auto& st) { return st.line; }, s.node);
}

class CfgBuilder {
  public:
    Cfg build(const Block& body) {
        cfg_.exit = list(body, cfg_.entry, std::nullopt);
        report_unreachable();
        return std::move(cfg_);
    }

  private:
    Cfg cfg_;

    std::size_t fresh() { return cfg_.node_count++; }

    void edge(std::size_t src, std::size_t dst, EdgeLabel label) { cfg_.edges.push_back({src, dst, std::move(label)}); }

    // Builds `b` starting at `from`. When `target` is set, control leaves the
    // list at exactly that node.
    std::optional<std::size_t> list(const Block& b, std::optional<std::size_t> from, std::optional<std::size_t> target) {
        std::optional<std::size_t> cur = from;
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (!cur) {
                cfg_.diagnostics.push_back("line " + std::to_string(line_of(b[k])) + ": statement is unreachable");
                break;
            }
            cur = stmt(b[k], *cur, k + 1 == b.size() ? target : std::nullopt);
        }
        if (target && cur && *cur != *target) {
            edge(*cur, *target, SkipLabel{});
            cur = target;
        }
        return cur;
    }

    std::optional<std::size_t> stmt(const Stmt& s, std::size_t from, std::optional<std::size_t> target) {
        return std::visit(
            [&](const auto& st) -> std::optional<std::size_t> {
                using S = std::decay_t<decltype(st)>;
                if constexpr (std::is_same_v<S, AssignStmt>) {
                    const std::size_t dst = target ? *target : fresh();
                    edge(from, dst, AssignLabel{st.var, st.value});
                    return dst;
                } else if constexpr (std::is_same_v<S, SkipStmt>) {
                    return from;
                } else if constexpr (std::is_same_v<S, AssertStmt>) {
                    cfg_.asserts.push_back({from, st.cond, st.line});
                    return from;
                } else if constexpr (std::is_same_v<S, IfStmt>) {
                    const Condition yes = normalize_condition(st.cond);
                    const Condition no = normalize_condition(Condition::negation(st.cond));
                    const std::size_t join = target ? *target : fresh();
                    branch(from, yes, st.then_branch, join);
                    branch(from, no, st.else_branch, join);
                    return join;
                } else {
                    return loop(st, from, target);
                }
            },
            s.node);
    }

    void branch(std::size_t from, const Condition& cond, const Block& body, std::size_t join) {
        if (body.empty()) {
            edge(from, join, GuardLabel{cond});
            return;
        }
        const std::size_t start = fresh();
        edge(from, start, GuardLabel{cond});
        list(body, start, join);
    }

    std::optional<std::size_t> loop(const WhileStmt& w, std::size_t head, std::optional<std::size_t> target) {
        const Condition cond = normalize_condition(w.cond);
        if (cond.kind() == Condition::Kind::truth) {
            const std::size_t before = cfg_.edges.size();
            list(w.body, head, head);
            if (cfg_.edges.size() == before) {
                edge(head, head, GuardLabel{cond});
            }
            return std::nullopt;
        }
        if (w.body.empty()) {
            edge(head, head, GuardLabel{cond});
        } else {
            const std::size_t start = fresh();
            edge(head, start, GuardLabel{cond});
            list(w.body, start, head);
        }
        const std::size_t exit = target ? *target : fresh();
        edge(head, exit, GuardLabel{normalize_condition(Condition::negation(w.cond))});
        return exit;
    }

    void report_unreachable() {
        std::vector<bool> seen(cfg_.node_count, false);
        std::vector<std::size_t> stack{cfg_.entry};
        seen[cfg_.entry] = true;
        while (!stack.empty()) {
            const std::size_t n = stack.back();
            stack.pop_back();
            for (const auto& e : cfg_.edges) {
                if (e.src == n && !seen[e.dst]) {
                    seen[e.dst] = true;
                    stack.push_back(e.dst);
                }
            }
        }
        for (std::size_t n = 0; n < cfg_.node_count; ++n) {
            if (!seen[n]) {
                cfg_.diagnostics.push_back("node " + std::to_string(n) + " is unreachable from the entry");
            }
        }
    }
};

std::string letters(std::size_t n) {
    std::string s;
    do {
        s.insert(s.begin(), static_cast<char>('a' + n % 26));
        n /= 26;
    } while (n-- > 0);
    return s;
}

} // namespace

Cfg build_cfg(const Block& body) { return CfgBuilder{}.build(body); }

ProductCfg::ProductCfg(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) {
        throw std::invalid_argument("interleaving needs at least one process");
    }
    node_count_ = 1;
    for (const std::size_t s : sizes_) {
        node_count_ *= s;
    }
}

std::vector<std::size_t> ProductCfg::decode(std::size_t node) const {
    std::vector<std::size_t> locals(sizes_.size());
    for (std::size_t p = sizes_.size(); p-- > 0;) {
        locals[p] = node % sizes_[p];
        node /= sizes_[p];
    }
    return locals;
}

std::size_t ProductCfg::encode(std::span<const std::size_t> locals) const {
    std::size_t node = 0;
    for (std::size_t p = 0; p < sizes_.size(); ++p) {
        node = node * sizes_[p] + locals[p];
    }
    return node;
}

std::string ProductCfg::label(std::size_t node) const {
    const auto locals = decode(node);
    std::string s = "(";
    for (std::size_t p = 0; p < locals.size(); ++p) {
        if (p != 0) {
            s += ",";
        }
        s += p % 2 == 1 ? letters(locals[p]) : std::to_string(locals[p]);
    }
    return s + ")";
}

ProductCfg interleave(std::span<const Cfg> cfgs) {
    std::vector<std::size_t> sizes;
    for (const auto& c : cfgs) {
        sizes.push_back(c.node_count);
    }
    ProductCfg product(std::move(sizes));
    for (std::size_t node = 0; node < product.node_count(); ++node) {
        const auto locals = product.decode(node);
        for (std::size_t p = 0; p < cfgs.size(); ++p) {
            const auto& edges = cfgs[p].edges;
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (edges[e].src != locals[p]) {
                    continue;
                }
                auto moved = locals;
                moved[p] = edges[e].dst;
                product.edges_.push_back({node, product.encode(moved), p, e});
            }
        }
    }
    return product;
}

} // namespace dbmai
