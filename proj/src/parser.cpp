// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dbmai/parser.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <vector>

namespace dbmai {

namespace {

enum class Tok { ident, number, punct, end };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    const auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') {
                advance(1);
            }
            continue;
        }
        const int tl = line;
        const int tc = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t n = 1;
            while (i + n < src.size() && (std::isalnum(static_cast<unsigned char>(src[i + n])) || src[i + n] == '_')) {
                ++n;
            }
            out.push_back({Tok::ident, std::string(src.substr(i, n)), tl, tc});
            advance(n);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t n = 1;
            while (i + n < src.size() && std::isdigit(static_cast<unsigned char>(src[i + n]))) {
                ++n;
            }
            out.push_back({Tok::number, std::string(src.substr(i, n)), tl, tc});
            advance(n);
            continue;
        }
        static const std::set<std::string, std::less<>> two{"<=", ">=", "==", "!="};
        if (i + 1 < src.size() && two.contains(src.substr(i, 2))) {
            out.push_back({Tok::punct, std::string(src.substr(i, 2)), tl, tc});
            advance(2);
            continue;
        }
        if (std::string_view("{}();,=<>+-*").find(c) != std::string_view::npos) {
            out.push_back({Tok::punct, std::string(1, c), tl, tc});
            advance(1);
            continue;
        }
        throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

const std::set<std::string, std::less<>> keywords{"var",  "init", "process", "if",   "else", "while", "skip",
                                                  "assert", "true", "false",   "and",  "or",   "not"};

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Program program() {
        while (is_word("var")) {
            declaration();
        }
        if (is_word("init")) {
            next();
            prog_.init = block();
        }
        if (!is_word("process")) {
            fail("expected 'process'");
        }
        std::set<std::string> process_names;
        while (is_word("process")) {
            next();
            const Token& name = expect_ident();
            if (!process_names.insert(name.text).second) {
                throw ParseError(name.line, name.column, "duplicate process '" + name.text + "'");
            }
            prog_.processes.push_back(Process{name.text, block()});
        }
        if (peek().kind != Tok::end) {
            fail("unexpected '" + peek().text + "'");
        }
        return std::move(prog_);
    }

  private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Program prog_;
    std::map<std::string, std::size_t, std::less<>> vars_;

    [[nodiscard]] const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    [[nodiscard]] bool is_word(std::string_view w) const { return peek().kind == Tok::ident && peek().text == w; }
    [[nodiscard]] bool is_punct(std::string_view p) const { return peek().kind == Tok::punct && peek().text == p; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().line, peek().column, msg); }

    void expect(std::string_view p) {
        if (!is_punct(p)) {
            fail("expected '" + std::string(p) + "'" + (peek().kind == Tok::end ? " at end of input" : " before '" + peek().text + "'"));
        }
        next();
    }

    const Token& expect_ident() {
        if (peek().kind != Tok::ident || keywords.contains(peek().text)) {
            fail("expected identifier");
        }
        return next();
    }

    void declaration() {
        next();
        do {
            const Token& name = expect_ident();
            if (vars_.contains(name.text)) {
                throw ParseError(name.line, name.column, "duplicate declaration of '" + name.text + "'");
            }
            vars_.emplace(name.text, prog_.names.size());
            prog_.names.push_back(name.text);
            if (!is_punct(",")) {
                break;
            }
            next();
        } while (true);
        expect(";");
    }

    std::size_t resolve(const Token& t) const {
        const auto it = vars_.find(t.text);
        if (it == vars_.end()) {
            throw ParseError(t.line, t.column, "undeclared variable '" + t.text + "'");
        }
        return it->second;
    }

    Block block() {
        expect("{");
        Block out;
        while (!is_punct("}")) {
            if (peek().kind == Tok::end) {
                fail("unterminated block");
            }
            out.push_back(statement());
        }
        next();
        return out;
    }

    Stmt statement() {
        const int line = peek().line;
        if (is_word("if")) {
            next();
            Condition c = condition();
            Block then_branch = block();
            Block else_branch;
            if (is_word("else")) {
                next();
                else_branch = block();
            }
            return Stmt{IfStmt{std::move(c), std::move(then_branch), std::move(else_branch), line}};
        }
        if (is_word("while")) {
            next();
            Condition c = condition();
            return Stmt{WhileStmt{std::move(c), block(), line}};
        }
        if (is_word("skip")) {
            next();
            expect(";");
            return Stmt{SkipStmt{line}};
        }
        if (is_word("assert")) {
            next();
            expect("(");
            Condition c = condition();
            expect(")");
            expect(";");
            return Stmt{AssertStmt{std::move(c), line}};
        }
        const Token& target = expect_ident();
        const std::size_t var = resolve(target);
        expect("=");
        Expr value = expr();
        expect(";");
        return Stmt{AssignStmt{var, std::move(value), line}};
    }

    Condition condition() {
        Condition lhs = conjunction();
        while (is_word("or")) {
            next();
            lhs = Condition::disjunction(std::move(lhs), conjunction());
        }
        return lhs;
    }

    Condition conjunction() {
        Condition lhs = negation();
        while (is_word("and")) {
            next();
            lhs = Condition::conjunction(std::move(lhs), negation());
        }
        return lhs;
    }

    Condition negation() {
        if (is_word("not")) {
            next();
            return Condition::negation(negation());
        }
        if (is_word("true")) {
            next();
            return Condition::truth();
        }
        if (is_word("false")) {
            next();
            return Condition::falsity();
        }
        if (is_punct("(")) {
            // Either a parenthesized condition or an atom whose left
            // expression starts with a parenthesis.
            const std::size_t saved = pos_;
            try {
                next();
                Condition inner = condition();
                expect(")");
                if (!is_relation()) {
                    return inner;
                }
            } catch (const ParseError&) {
                // retried below as an atom, which reports its own errors
            }
            pos_ = saved;
        }
        return atom();
    }

    [[nodiscard]] bool is_relation() const {
        static const std::set<std::string, std::less<>> rels{"<", "<=", "==", "!=", ">=", ">"};
        return peek().kind == Tok::punct && rels.contains(peek().text);
    }

    Condition atom() {
        Expr lhs = expr();
        if (!is_relation()) {
            fail("expected comparison operator");
        }
        static const std::map<std::string, Relation, std::less<>> rels{
            {"<", Relation::lt},  {"<=", Relation::le}, {"==", Relation::eq},
            {"!=", Relation::ne}, {">=", Relation::ge}, {">", Relation::gt}};
        const Relation rel = rels.at(next().text);
        Expr rhs = expr();
        return Condition::atom(Comparison{std::move(lhs), rel, std::move(rhs)});
    }

    Expr expr() {
        Expr lhs = term();
        while (is_punct("+") || is_punct("-")) {
            const bool plus = next().text == "+";
            Expr rhs = term();
            lhs = plus ? Expr::add(std::move(lhs), std::move(rhs)) : Expr::subtract(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Expr term() {
        Expr lhs = unary();
        while (is_punct("*")) {
            next();
            lhs = Expr::multiply(std::move(lhs), unary());
        }
        return lhs;
    }

    Expr unary() {
        if (is_punct("-")) {
            next();
            return Expr::negate(unary());
        }
        return primary();
    }

    Expr primary() {
        if (is_punct("(")) {
            next();
            Expr inner = expr();
            expect(")");
            return inner;
        }
        if (peek().kind == Tok::number) {
            const Token& t = next();
            Integer v = 0;
            const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc{}) {
                throw ParseError(t.line, t.column, "integer literal out of range");
            }
            return Expr::constant(v);
        }
        if (peek().kind == Tok::ident && !keywords.contains(peek().text)) {
            return Expr::variable(resolve(next()));
        }
        fail(peek().kind == Tok::end ? "unexpected end of input" : "unexpected '" + peek().text + "'");
    }
};

} // namespace

Program parse_program(std::string_view text) { return Parser(tokenize(text)).program(); }

} // namespace dbmai
