#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>

#include "tpl/rational.hpp"

namespace tpl {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// TPL expressions: E ::= x | null | n | E.f
struct Expr {
    enum class Kind { Var, NullLit, IntLit, FieldRead };
    Kind kind;
    std::string var;    // Var
    std::int64_t n = 0; // IntLit
    ExprPtr base;       // FieldRead
    std::string field;  // FieldRead
};

inline ExprPtr mk_var(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Var;
    e->var = std::move(name);
    return e;
}
inline ExprPtr mk_null() {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::NullLit;
    return e;
}
inline ExprPtr mk_int(std::int64_t n) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::IntLit;
    e->n = n;
    return e;
}
inline ExprPtr mk_field_read(ExprPtr base, std::string field) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::FieldRead;
    e->base = std::move(base);
    e->field = std::move(field);
    return e;
}

// Heap-independent expressions are exactly the SL expression layer.
inline bool expr_is_sl(const ExprPtr& e) {
    return e->kind != Expr::Kind::FieldRead;
}

inline int expr_deref_depth(const ExprPtr& e) {
    if (e->kind != Expr::Kind::FieldRead) return 0;
    return 1 + expr_deref_depth(e->base);
}

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::Var: return a->var == b->var;
        case Expr::Kind::NullLit: return true;
        case Expr::Kind::IntLit: return a->n == b->n;
        case Expr::Kind::FieldRead: return a->field == b->field && expr_equal(a->base, b->base);
    }
    return false;
}

struct Assertion;
using AssertionPtr = std::shared_ptr<const Assertion>;

// TPL assertions. AccAny is acc(E.f,_): strictly positive permission,
// used by framed(.) and the wildcard points-to. Neq is primitive because
// the Chalice boolean layer has E != E'. TrueLit/FalseLit are the
// constant atoms.
struct Assertion {
    enum class Kind {
        Eq, Neq, PointsTo, Acc, AccAny,
        Star, Wand, And, Or, Imp,
        Exists, TrueLit, FalseLit
    };
    Kind kind;
    ExprPtr e1, e2;      // Eq/Neq both; PointsTo: e1 receiver, e2 value; Acc/AccAny: e1 receiver
    std::string field;   // PointsTo/Acc/AccAny
    Perm perm;           // PointsTo/Acc
    AssertionPtr lhs, rhs; // binary connectives; Exists uses rhs as body
    std::string var;     // Exists binder
};

inline AssertionPtr mk_bin(Assertion::Kind k, AssertionPtr l, AssertionPtr r) {
    auto a = std::make_shared<Assertion>();
    a->kind = k;
    a->lhs = std::move(l);
    a->rhs = std::move(r);
    return a;
}
inline AssertionPtr mk_star(AssertionPtr l, AssertionPtr r) { return mk_bin(Assertion::Kind::Star, std::move(l), std::move(r)); }
inline AssertionPtr mk_wand(AssertionPtr l, AssertionPtr r) { return mk_bin(Assertion::Kind::Wand, std::move(l), std::move(r)); }
inline AssertionPtr mk_and(AssertionPtr l, AssertionPtr r) { return mk_bin(Assertion::Kind::And, std::move(l), std::move(r)); }
inline AssertionPtr mk_or(AssertionPtr l, AssertionPtr r) { return mk_bin(Assertion::Kind::Or, std::move(l), std::move(r)); }
inline AssertionPtr mk_imp(AssertionPtr l, AssertionPtr r) { return mk_bin(Assertion::Kind::Imp, std::move(l), std::move(r)); }

inline AssertionPtr mk_eq(ExprPtr l, ExprPtr r) {
    auto a = std::make_shared<Assertion>();
    a->kind = Assertion::Kind::Eq;
    a->e1 = std::move(l);
    a->e2 = std::move(r);
    return a;
}
inline AssertionPtr mk_neq(ExprPtr l, ExprPtr r) {
    auto a = std::make_shared<Assertion>();
    a->kind = Assertion::Kind::Neq;
    a->e1 = std::move(l);
    a->e2 = std::move(r);
    return a;
}
inline AssertionPtr mk_points_to(ExprPtr recv, std::string field, Perm p, ExprPtr val) {
    auto a = std::make_shared<Assertion>();
    a->kind = Assertion::Kind::PointsTo;
    a->e1 = std::move(recv);
    a->field = std::move(field);
    a->perm = p;
    a->e2 = std::move(val);
    return a;
}
inline AssertionPtr mk_acc(ExprPtr recv, std::string field, Perm p) {
    auto a = std::make_shared<Assertion>();
    a->kind = Assertion::Kind::Acc;
    a->e1 = std::move(recv);
    a->field = std::move(field);
    a->perm = p;
    return a;
}
inline AssertionPtr mk_acc_any(ExprPtr recv, std::string field) {
    auto a = std::make_shared<Assertion>();
    a->kind = Assertion::Kind::AccAny;
    a->e1 = std::move(recv);
    a->field = std::move(field);
    return a;
}
inline AssertionPtr mk_exists(std::string var, AssertionPtr body) {
    auto a = std::make_shared<Assertion>();
    a->kind = Assertion::Kind::Exists;
    a->var = std::move(var);
    a->rhs = std::move(body);
    return a;
}
inline AssertionPtr mk_true() {
    auto a = std::make_shared<Assertion>();
    a->kind = Assertion::Kind::TrueLit;
    return a;
}
inline AssertionPtr mk_false() {
    auto a = std::make_shared<Assertion>();
    a->kind = Assertion::Kind::FalseLit;
    return a;
}

inline bool assertion_equal(const AssertionPtr& a, const AssertionPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Assertion::Kind::TrueLit:
        case Assertion::Kind::FalseLit:
            return true;
        case Assertion::Kind::Eq:
        case Assertion::Kind::Neq:
            return expr_equal(a->e1, b->e1) && expr_equal(a->e2, b->e2);
        case Assertion::Kind::PointsTo:
            return a->field == b->field && a->perm == b->perm && expr_equal(a->e1, b->e1) &&
                   expr_equal(a->e2, b->e2);
        case Assertion::Kind::Acc:
            return a->field == b->field && a->perm == b->perm && expr_equal(a->e1, b->e1);
        case Assertion::Kind::AccAny:
            return a->field == b->field && expr_equal(a->e1, b->e1);
        case Assertion::Kind::Exists:
            return a->var == b->var && assertion_equal(a->rhs, b->rhs);
        default:
            return assertion_equal(a->lhs, b->lhs) && assertion_equal(a->rhs, b->rhs);
    }
}

inline void collect_vars(const ExprPtr& e, std::set<std::string>& out) {
    if (e->kind == Expr::Kind::Var) out.insert(e->var);
    else if (e->kind == Expr::Kind::FieldRead) collect_vars(e->base, out);
}

inline void collect_free_vars(const AssertionPtr& a, std::set<std::string>& out) {
    switch (a->kind) {
        case Assertion::Kind::TrueLit:
        case Assertion::Kind::FalseLit:
            return;
        case Assertion::Kind::Eq:
        case Assertion::Kind::Neq:
            collect_vars(a->e1, out);
            collect_vars(a->e2, out);
            return;
        case Assertion::Kind::PointsTo:
            collect_vars(a->e1, out);
            collect_vars(a->e2, out);
            return;
        case Assertion::Kind::Acc:
        case Assertion::Kind::AccAny:
            collect_vars(a->e1, out);
            return;
        case Assertion::Kind::Exists: {
            std::set<std::string> inner;
            collect_free_vars(a->rhs, inner);
            inner.erase(a->var);
            out.insert(inner.begin(), inner.end());
            return;
        }
        default:
            collect_free_vars(a->lhs, out);
            collect_free_vars(a->rhs, out);
    }
}

inline std::set<std::string> free_vars(const AssertionPtr& a) {
    std::set<std::string> out;
    collect_free_vars(a, out);
    return out;
}

inline std::set<std::string> expr_vars(const ExprPtr& e) {
    std::set<std::string> out;
    collect_vars(e, out);
    return out;
}

}  // namespace tpl
