#pragma once

#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpl/ast.hpp"

namespace tpl {

struct ParseError : std::runtime_error {
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(pos) + ": " + msg), position(pos) {}
    std::size_t position;
};

namespace detail {

struct Token {
    enum class Kind {
        Ident, Int, KwNull, KwTrue, KwFalse, KwExists, KwAcc,
        LParen, RParen, LBracket, RBracket, Comma, Dot, Slash, Underscore,
        EqEq, Neq, PointsTo, Star, AndAnd, OrOr, Implies, Wand, ColonColon,
        End
    };
    Kind kind;
    std::string text;
    std::int64_t n = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { tokenize(); }
    const std::vector<Token>& tokens() const { return toks_; }

private:
    void tokenize() {
        std::size_t i = 0;
        auto push = [&](Token::Kind k, std::size_t pos, std::string text) {
            toks_.push_back(Token{k, std::move(text), 0, pos});
        };
        while (i < src_.size()) {
            char c = src_[i];
            if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
            std::size_t pos = i;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                if (c == '_' && (i + 1 >= src_.size() ||
                                 !(std::isalnum(static_cast<unsigned char>(src_[i + 1])) || src_[i + 1] == '_'))) {
                    push(Token::Kind::Underscore, pos, "_");
                    ++i;
                    continue;
                }
                std::size_t j = i;
                while (j < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) ++j;
                while (j < src_.size() && src_[j] == '\'') ++j;  // primes for fresh names
                std::string word = src_.substr(i, j - i);
                i = j;
                if (word == "null") push(Token::Kind::KwNull, pos, word);
                else if (word == "true") push(Token::Kind::KwTrue, pos, word);
                else if (word == "false") push(Token::Kind::KwFalse, pos, word);
                else if (word == "exists") push(Token::Kind::KwExists, pos, word);
                else if (word == "acc") push(Token::Kind::KwAcc, pos, word);
                else push(Token::Kind::Ident, pos, word);
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) ||
                (c == '-' && i + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i + 1])))) {
                std::size_t j = i + 1;
                while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
                Token t{Token::Kind::Int, src_.substr(i, j - i), 0, pos};
                t.n = std::stoll(t.text);
                toks_.push_back(t);
                i = j;
                continue;
            }
            auto two = src_.substr(i, 2);
            auto three = src_.substr(i, 3);
            if (three == "--*") { push(Token::Kind::Wand, pos, three); i += 3; continue; }
            if (three == "|->") { push(Token::Kind::PointsTo, pos, three); i += 3; continue; }
            if (three == "==>") { push(Token::Kind::Implies, pos, three); i += 3; continue; }
            if (two == "==") { push(Token::Kind::EqEq, pos, two); i += 2; continue; }
            if (two == "!=") { push(Token::Kind::Neq, pos, two); i += 2; continue; }
            if (two == "&&") { push(Token::Kind::AndAnd, pos, two); i += 2; continue; }
            if (two == "||") { push(Token::Kind::OrOr, pos, two); i += 2; continue; }
            if (two == "::") { push(Token::Kind::ColonColon, pos, two); i += 2; continue; }
            switch (c) {
                case '(': push(Token::Kind::LParen, pos, "("); break;
                case ')': push(Token::Kind::RParen, pos, ")"); break;
                case '[': push(Token::Kind::LBracket, pos, "["); break;
                case ']': push(Token::Kind::RBracket, pos, "]"); break;
                case ',': push(Token::Kind::Comma, pos, ","); break;
                case '.': push(Token::Kind::Dot, pos, "."); break;
                case '/': push(Token::Kind::Slash, pos, "/"); break;
                case '*': push(Token::Kind::Star, pos, "*"); break;
                default:
                    throw ParseError(pos, std::string("unexpected character '") + c + "'");
            }
            ++i;
        }
        toks_.push_back(Token{Token::Kind::End, "", 0, src_.size()});
    }

    const std::string& src_;
    std::vector<Token> toks_;
};

class AssertionParser {
public:
    explicit AssertionParser(const std::string& src) : lexer_(src) {
        for (const auto& t : lexer_.tokens())
            if (t.kind == Token::Kind::Ident) used_names_.insert(t.text);
    }

    AssertionPtr parse() {
        AssertionPtr a = parse_wand();
        expect(Token::Kind::End, "trailing input after assertion");
        return a;
    }

    ExprPtr parse_full_expr() {
        ExprPtr e = parse_expr();
        expect(Token::Kind::End, "trailing input after expression");
        return e;
    }

private:
    const Token& peek() const { return lexer_.tokens()[idx_]; }
    const Token& advance() { return lexer_.tokens()[idx_++]; }
    bool accept(Token::Kind k) {
        if (peek().kind == k) { ++idx_; return true; }
        return false;
    }
    void expect(Token::Kind k, const std::string& what) {
        if (!accept(k)) throw ParseError(peek().pos, "expected " + what);
    }

    // --* is loosest and right-associative, then ==>.
    AssertionPtr parse_wand() {
        AssertionPtr l = parse_imp();
        if (accept(Token::Kind::Wand)) return mk_wand(std::move(l), parse_wand());
        return l;
    }
    AssertionPtr parse_imp() {
        AssertionPtr l = parse_or();
        if (accept(Token::Kind::Implies)) return mk_imp(std::move(l), parse_imp());
        return l;
    }
    AssertionPtr parse_or() {
        AssertionPtr l = parse_and();
        while (accept(Token::Kind::OrOr)) l = mk_or(std::move(l), parse_and());
        return l;
    }
    AssertionPtr parse_and() {
        AssertionPtr l = parse_star();
        while (accept(Token::Kind::AndAnd)) l = mk_and(std::move(l), parse_star());
        return l;
    }
    AssertionPtr parse_star() {
        AssertionPtr l = parse_primary();
        while (accept(Token::Kind::Star)) l = mk_star(std::move(l), parse_primary());
        return l;
    }

    AssertionPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Kind::KwTrue: advance(); return mk_true();
            case Token::Kind::KwFalse: advance(); return mk_false();
            case Token::Kind::LParen: {
                advance();
                AssertionPtr a = parse_wand();
                expect(Token::Kind::RParen, "')'");
                return a;
            }
            case Token::Kind::KwExists: {
                advance();
                const Token& v = peek();
                if (v.kind != Token::Kind::Ident) throw ParseError(v.pos, "expected bound variable");
                advance();
                expect(Token::Kind::ColonColon, "'::' after bound variable");
                return mk_exists(v.text, parse_wand());
            }
            case Token::Kind::KwAcc: {
                advance();
                expect(Token::Kind::LParen, "'(' after acc");
                ExprPtr e = parse_expr();
                if (e->kind != Expr::Kind::FieldRead)
                    throw ParseError(t.pos, "acc expects a field location E.f");
                expect(Token::Kind::Comma, "',' in acc");
                if (accept(Token::Kind::Underscore)) {
                    expect(Token::Kind::RParen, "')'");
                    return mk_acc_any(e->base, e->field);
                }
                std::size_t ppos = peek().pos;
                Perm p = parse_perm_literal();
                if (!is_assertion_perm(p))
                    throw ParseError(ppos, "permission literal must be in (0,1]");
                expect(Token::Kind::RParen, "')'");
                return mk_acc(e->base, e->field, p);
            }
            default:
                return parse_comparison();
        }
    }

    AssertionPtr parse_comparison() {
        ExprPtr l = parse_expr();
        const Token& t = peek();
        if (accept(Token::Kind::EqEq)) return mk_eq(std::move(l), parse_expr());
        if (accept(Token::Kind::Neq)) return mk_neq(std::move(l), parse_expr());
        if (accept(Token::Kind::PointsTo)) {
            if (l->kind != Expr::Kind::FieldRead)
                throw ParseError(t.pos, "|-> expects a field location E.f on the left");
            expect(Token::Kind::LBracket, "'[' before points-to permission");
            std::size_t ppos = peek().pos;
            Perm p = parse_perm_literal();
            if (!is_assertion_perm(p)) throw ParseError(ppos, "permission literal must be in (0,1]");
            expect(Token::Kind::RBracket, "']' after points-to permission");
            if (accept(Token::Kind::Underscore)) {
                // e.f |->[q] _  desugars to  exists v :: e.f |->[q] v
                std::string v = fresh_name();
                return mk_exists(v, mk_points_to(l->base, l->field, p, mk_var(v)));
            }
            return mk_points_to(l->base, l->field, p, parse_expr());
        }
        throw ParseError(t.pos, "expected '==', '!=' or '|->' after expression");
    }

    ExprPtr parse_expr() {
        const Token& t = peek();
        ExprPtr e;
        if (t.kind == Token::Kind::KwNull) { advance(); e = mk_null(); }
        else if (t.kind == Token::Kind::Int) { advance(); e = mk_int(t.n); }
        else if (t.kind == Token::Kind::Ident) { advance(); e = mk_var(t.text); }
        else throw ParseError(t.pos, "expected expression");
        while (accept(Token::Kind::Dot)) {
            const Token& f = peek();
            if (f.kind != Token::Kind::Ident) throw ParseError(f.pos, "expected field name after '.'");
            advance();
            e = mk_field_read(std::move(e), f.text);
        }
        return e;
    }

    Perm parse_perm_literal() {
        const Token& t = peek();
        if (t.kind != Token::Kind::Int) throw ParseError(t.pos, "expected permission literal");
        advance();
        std::int64_t num = t.n;
        if (accept(Token::Kind::Slash)) {
            const Token& d = peek();
            if (d.kind != Token::Kind::Int) throw ParseError(d.pos, "expected permission denominator");
            advance();
            return Rational(num, d.n);
        }
        return Rational(num, 1);
    }

    std::string fresh_name() {
        std::string base = "v";
        while (used_names_.count(base)) base += "'";
        used_names_.insert(base);
        return base;
    }

    Lexer lexer_;
    std::size_t idx_ = 0;
    std::set<std::string> used_names_;
};

}  // namespace detail

inline AssertionPtr parse_assertion(const std::string& text) {
    return detail::AssertionParser(text).parse();
}

inline ExprPtr parse_expr(const std::string& text) {
    return detail::AssertionParser(text).parse_full_expr();
}

// --- rendering -------------------------------------------------------------

inline std::string render(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Var: return e->var;
        case Expr::Kind::NullLit: return "null";
        case Expr::Kind::IntLit: return std::to_string(e->n);
        case Expr::Kind::FieldRead: return render(e->base) + "." + e->field;
    }
    return "?";
}

namespace detail {

// precedence levels: wand/exists 0, imp 1, or 2, and 3, star 4, atoms 5
inline int assertion_prec(const Assertion& a) {
    switch (a.kind) {
        case Assertion::Kind::Wand:
        case Assertion::Kind::Exists: return 0;
        case Assertion::Kind::Imp: return 1;
        case Assertion::Kind::Or: return 2;
        case Assertion::Kind::And: return 3;
        case Assertion::Kind::Star: return 4;
        default: return 5;
    }
}

inline void render_to(const AssertionPtr& a, int min_prec, std::ostringstream& os) {
    int prec = assertion_prec(*a);
    bool parens = prec < min_prec;
    if (parens) os << "(";
    switch (a->kind) {
        case Assertion::Kind::TrueLit: os << "true"; break;
        case Assertion::Kind::FalseLit: os << "false"; break;
        case Assertion::Kind::Eq: os << render(a->e1) << " == " << render(a->e2); break;
        case Assertion::Kind::Neq: os << render(a->e1) << " != " << render(a->e2); break;
        case Assertion::Kind::PointsTo:
            os << render(a->e1) << "." << a->field << " |->[" << a->perm.str() << "] " << render(a->e2);
            break;
        case Assertion::Kind::Acc:
            os << "acc(" << render(a->e1) << "." << a->field << ", " << a->perm.str() << ")";
            break;
        case Assertion::Kind::AccAny:
            os << "acc(" << render(a->e1) << "." << a->field << ", _)";
            break;
        case Assertion::Kind::Exists:
            os << "exists " << a->var << " :: ";
            render_to(a->rhs, 0, os);
            break;
        case Assertion::Kind::Wand:
            render_to(a->lhs, 1, os);
            os << " --* ";
            render_to(a->rhs, 0, os);
            break;
        case Assertion::Kind::Imp:
            render_to(a->lhs, 2, os);
            os << " ==> ";
            render_to(a->rhs, 1, os);
            break;
        case Assertion::Kind::Or:
            render_to(a->lhs, 2, os);
            os << " || ";
            render_to(a->rhs, 3, os);
            break;
        case Assertion::Kind::And:
            render_to(a->lhs, 3, os);
            os << " && ";
            render_to(a->rhs, 4, os);
            break;
        case Assertion::Kind::Star:
            render_to(a->lhs, 4, os);
            os << " * ";
            render_to(a->rhs, 5, os);
            break;
    }
    if (parens) os << ")";
}

}  // namespace detail

inline std::string render(const AssertionPtr& a) {
    std::ostringstream os;
    detail::render_to(a, 0, os);
    return os.str();
}

}  // namespace tpl
