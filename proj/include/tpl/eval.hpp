#pragma once

#include <string>

#include "tpl/ast.hpp"
#include "tpl/result.hpp"
#include "tpl/state.hpp"
#include "tpl/universe.hpp"

namespace tpl {

struct EvalError {
    enum class Kind { UnboundVar, NonObjectDeref };
    Kind kind;
    std::string var;  // for UnboundVar
};

// [[E]](env, H): variables from the environment, literals to themselves,
// E.f reads the heap. Dereferencing a non-object value is an error the
// caller turns into atom falsity; an unbound variable is a precondition
// violation.
inline Result<Value, EvalError> eval_expr(const ExprPtr& e, const TotalHeap& h,
                                          const Environment& env, const Universe& u) {
    using R = Result<Value, EvalError>;
    switch (e->kind) {
        case Expr::Kind::Var: {
            auto it = env.find(e->var);
            if (it == env.end()) return R::err({EvalError::Kind::UnboundVar, e->var});
            return R::ok(it->second);
        }
        case Expr::Kind::NullLit:
            return R::ok(Value::null());
        case Expr::Kind::IntLit:
            return R::ok(Value::integer(e->n));
        case Expr::Kind::FieldRead: {
            auto base = eval_expr(e->base, h, env, u);
            if (!base) return base;
            if (!base.value().is_object()) return R::err({EvalError::Kind::NonObjectDeref, {}});
            int f = u.require_field(e->field);
            return R::ok(h.at(u, Location{base.value().obj, f}));
        }
    }
    return R::err({EvalError::Kind::NonObjectDeref, {}});
}

// Heap-independent evaluation for SL expressions (never touches the heap).
inline Result<Value, EvalError> eval_sl_expr(const ExprPtr& e, const Environment& env) {
    using R = Result<Value, EvalError>;
    switch (e->kind) {
        case Expr::Kind::Var: {
            auto it = env.find(e->var);
            if (it == env.end()) return R::err({EvalError::Kind::UnboundVar, e->var});
            return R::ok(it->second);
        }
        case Expr::Kind::NullLit:
            return R::ok(Value::null());
        case Expr::Kind::IntLit:
            return R::ok(Value::integer(e->n));
        case Expr::Kind::FieldRead:
            return R::err({EvalError::Kind::NonObjectDeref, {}});
    }
    return R::err({EvalError::Kind::NonObjectDeref, {}});
}

}  // namespace tpl
