#pragma once

#include <set>
#include <string>

#include "tpl/ast.hpp"

namespace tpl {

inline ExprPtr substitute_expr(const ExprPtr& e, const std::string& x, const ExprPtr& repl) {
    switch (e->kind) {
        case Expr::Kind::Var:
            return e->var == x ? repl : e;
        case Expr::Kind::FieldRead:
            return mk_field_read(substitute_expr(e->base, x, repl), e->field);
        default:
            return e;
    }
}

namespace detail {

inline std::string prime_fresh(const std::string& base, const std::set<std::string>& avoid) {
    std::string name = base;
    while (avoid.count(name)) name += "'";
    return name;
}

}  // namespace detail

// Capture-avoiding substitution a[repl/x]. Bound variables that would
// capture variables of repl are renamed with the prime scheme.
inline AssertionPtr substitute(const AssertionPtr& a, const std::string& x, const ExprPtr& repl) {
    switch (a->kind) {
        case Assertion::Kind::TrueLit:
        case Assertion::Kind::FalseLit:
            return a;
        case Assertion::Kind::Eq:
            return mk_eq(substitute_expr(a->e1, x, repl), substitute_expr(a->e2, x, repl));
        case Assertion::Kind::Neq:
            return mk_neq(substitute_expr(a->e1, x, repl), substitute_expr(a->e2, x, repl));
        case Assertion::Kind::PointsTo:
            return mk_points_to(substitute_expr(a->e1, x, repl), a->field, a->perm,
                                substitute_expr(a->e2, x, repl));
        case Assertion::Kind::Acc:
            return mk_acc(substitute_expr(a->e1, x, repl), a->field, a->perm);
        case Assertion::Kind::AccAny:
            return mk_acc_any(substitute_expr(a->e1, x, repl), a->field);
        case Assertion::Kind::Exists: {
            if (a->var == x) return a;  // x is shadowed
            std::set<std::string> repl_vars = expr_vars(repl);
            if (repl_vars.count(a->var)) {
                std::set<std::string> avoid = repl_vars;
                auto body_free = free_vars(a->rhs);
                avoid.insert(body_free.begin(), body_free.end());
                avoid.insert(x);
                std::string fresh = detail::prime_fresh(a->var, avoid);
                AssertionPtr renamed = substitute(a->rhs, a->var, mk_var(fresh));
                return mk_exists(fresh, substitute(renamed, x, repl));
            }
            return mk_exists(a->var, substitute(a->rhs, x, repl));
        }
        default: {
            auto b = std::make_shared<Assertion>(*a);
            b->lhs = substitute(a->lhs, x, repl);
            b->rhs = substitute(a->rhs, x, repl);
            return b;
        }
    }
}

}  // namespace tpl
