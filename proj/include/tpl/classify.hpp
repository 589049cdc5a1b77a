#pragma once

#include "tpl/ast.hpp"

namespace tpl {

// Purely syntactic subsyntax membership.
struct SubsyntaxClass {
    bool is_sl = false;
    bool is_chalice = false;
    bool is_restricted_sl = false;
    bool is_chalice_bool = false;
};

namespace detail {

inline bool sl_assertion(const AssertionPtr& a) {
    switch (a->kind) {
        case Assertion::Kind::Eq:
            return expr_is_sl(a->e1) && expr_is_sl(a->e2);
        case Assertion::Kind::PointsTo:
            return expr_is_sl(a->e1) && expr_is_sl(a->e2);
        case Assertion::Kind::Star:
        case Assertion::Kind::Wand:
        case Assertion::Kind::And:
        case Assertion::Kind::Or:
        case Assertion::Kind::Imp:
            return sl_assertion(a->lhs) && sl_assertion(a->rhs);
        case Assertion::Kind::Exists:
            return sl_assertion(a->rhs);
        default:
            return false;
    }
}

// Chalice boolean expressions B ::= E=E | E!=E | B*B
inline bool chalice_bool(const AssertionPtr& a) {
    switch (a->kind) {
        case Assertion::Kind::Eq:
        case Assertion::Kind::Neq:
            return true;
        case Assertion::Kind::Star:
            return chalice_bool(a->lhs) && chalice_bool(a->rhs);
        default:
            return false;
    }
}

// Chalice assertions p ::= B | acc(E.f,pi) | p*p | B ==> p
inline bool chalice_assertion(const AssertionPtr& a) {
    if (chalice_bool(a)) return true;
    switch (a->kind) {
        case Assertion::Kind::Acc:
            return true;
        case Assertion::Kind::Star:
            return chalice_assertion(a->lhs) && chalice_assertion(a->rhs);
        case Assertion::Kind::Imp:
            return chalice_bool(a->lhs) && chalice_assertion(a->rhs);
        default:
            return false;
    }
}

// Restricted SL booleans b ::= e=e | e!=e | b*b   (heap-independent e)
inline bool restricted_bool(const AssertionPtr& a) {
    switch (a->kind) {
        case Assertion::Kind::Eq:
        case Assertion::Kind::Neq:
            return expr_is_sl(a->e1) && expr_is_sl(a->e2);
        case Assertion::Kind::Star:
            return restricted_bool(a->lhs) && restricted_bool(a->rhs);
        default:
            return false;
    }
}

inline bool restricted_points_to(const AssertionPtr& a) {
    return a->kind == Assertion::Kind::PointsTo && expr_is_sl(a->e1) && expr_is_sl(a->e2);
}

// The witnessed existential: exists v :: e.f |->[pi] v * a, with v not
// free in e. A bare exists v :: e.f |->[pi] v (the wildcard sugar) counts
// as the degenerate form.
inline bool restricted_assertion(const AssertionPtr& a);

inline bool restricted_exists(const AssertionPtr& a) {
    if (a->kind != Assertion::Kind::Exists) return false;
    const AssertionPtr& body = a->rhs;
    auto witnesses = [&](const AssertionPtr& pt) {
        return pt->kind == Assertion::Kind::PointsTo && expr_is_sl(pt->e1) &&
               pt->e2->kind == Expr::Kind::Var && pt->e2->var == a->var &&
               expr_vars(pt->e1).count(a->var) == 0;
    };
    if (witnesses(body)) return true;
    if (body->kind == Assertion::Kind::Star && witnesses(body->lhs))
        return restricted_assertion(body->rhs);
    return false;
}

inline bool restricted_assertion(const AssertionPtr& a) {
    if (restricted_bool(a)) return true;
    if (restricted_points_to(a)) return true;
    if (restricted_exists(a)) return true;
    switch (a->kind) {
        case Assertion::Kind::Star:
            return restricted_assertion(a->lhs) && restricted_assertion(a->rhs);
        case Assertion::Kind::Imp:
            return restricted_bool(a->lhs) && restricted_assertion(a->rhs);
        default:
            return false;
    }
}

}  // namespace detail

inline SubsyntaxClass classify(const AssertionPtr& a) {
    SubsyntaxClass c;
    c.is_sl = detail::sl_assertion(a);
    c.is_chalice = detail::chalice_assertion(a);
    c.is_chalice_bool = detail::chalice_bool(a);
    c.is_restricted_sl = detail::restricted_assertion(a);
    return c;
}

}  // namespace tpl
