#pragma once

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "tpl/ast.hpp"
#include "tpl/classify.hpp"
#include "tpl/eval.hpp"
#include "tpl/state.hpp"
#include "tpl/universe.hpp"

namespace tpl {

struct NotSLFragment : std::invalid_argument {
    explicit NotSLFragment(const std::string& what) : std::invalid_argument(what) {}
};

// The classical partial-heap semantics of separation logic, used as the
// oracle against the total-heap semantics. Quantifiers over partial heaps
// range over the universe's value set and permission grid. This module is
// deliberately independent of the total-heap evaluation path.
class SlOracle {
public:
    explicit SlOracle(const Universe& u) : u_(u) {}

    bool sat(const PartialHeap& h, const Environment& env, const AssertionPtr& a) {
        if (!detail::sl_assertion(a))
            throw NotSLFragment("sl_sat: not in the SL fragment: " + debug_key(a));
        return go(h, env, a);
    }

private:
    bool go(const PartialHeap& h, const Environment& env, const AssertionPtr& a) {
        std::string key = memo_key(h, env, a);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool r = eval(h, env, a);
        memo_.emplace(std::move(key), r);
        return r;
    }

    bool eval(const PartialHeap& h, const Environment& env, const AssertionPtr& a) {
        switch (a->kind) {
            case Assertion::Kind::Eq: {
                auto v1 = value_of(a->e1, env);
                auto v2 = value_of(a->e2, env);
                return v1 == v2;
            }
            case Assertion::Kind::PointsTo: {
                Value recv = value_of(a->e1, env);
                if (!recv.is_object()) return false;
                Location l{recv.obj, u_.require_field(a->field)};
                if (!h.defined_at(l)) return false;
                const auto& cell = h.at(l);
                return cell.second >= a->perm && cell.first == value_of(a->e2, env);
            }
            case Assertion::Kind::And:
                return go(h, env, a->lhs) && go(h, env, a->rhs);
            case Assertion::Kind::Or:
                return go(h, env, a->lhs) || go(h, env, a->rhs);
            case Assertion::Kind::Star: {
                bool found = false;
                for_each_split(h, [&](const PartialHeap& h1, const PartialHeap& h2) {
                    if (!found && go(h1, env, a->lhs) && go(h2, env, a->rhs)) found = true;
                    return found;
                });
                return found;
            }
            case Assertion::Kind::Wand: {
                bool holds = true;
                for_each_compatible(h, [&](const PartialHeap& ext) {
                    if (!holds) return true;
                    if (go(ext, env, a->lhs)) {
                        auto combined = partial_combine(h, ext);
                        if (!go(combined.value(), env, a->rhs)) holds = false;
                    }
                    return !holds;
                });
                return holds;
            }
            case Assertion::Kind::Imp: {
                bool holds = true;
                for_each_compatible(h, [&](const PartialHeap& ext) {
                    if (!holds) return true;
                    auto combined = partial_combine(h, ext);
                    if (go(combined.value(), env, a->lhs) && !go(combined.value(), env, a->rhs))
                        holds = false;
                    return !holds;
                });
                return holds;
            }
            case Assertion::Kind::Exists: {
                for (const auto& v : u_.values()) {
                    Environment e2 = env;
                    e2[a->var] = v;
                    if (go(h, e2, a->rhs)) return true;
                }
                return false;
            }
            default:
                throw NotSLFragment("sl_sat: unsupported connective");
        }
    }

    Value value_of(const ExprPtr& e, const Environment& env) const {
        auto r = eval_sl_expr(e, env);
        if (!r) throw std::invalid_argument("sl_sat: unbound variable in expression");
        return r.value();
    }

    // Enumerates all ways of writing h = h1 * h2 on the permission grid.
    // The callback may return true to stop early.
    void for_each_split(const PartialHeap& h, const std::function<bool(const PartialHeap&, const PartialHeap&)>& fn) {
        std::vector<std::pair<Location, PartialHeap::Cell>> cells(h.cells().begin(), h.cells().end());
        PartialHeap h1, h2;
        split_rec(cells, 0, h1, h2, fn);
    }

    bool split_rec(const std::vector<std::pair<Location, PartialHeap::Cell>>& cells, std::size_t i,
                   PartialHeap& h1, PartialHeap& h2,
                   const std::function<bool(const PartialHeap&, const PartialHeap&)>& fn) {
        if (i == cells.size()) return fn(h1, h2);
        const auto& [l, cell] = cells[i];
        // grid portions k/D <= pi go left, the exact remainder goes right
        for (int k = 0; k <= u_.denom(); ++k) {
            Perm left = u_.grid_perm(k);
            if (left > cell.second) break;
            Perm right = cell.second - left;
            PartialHeap s1 = h1, s2 = h2;
            if (!left.is_zero()) s1.set(l, cell.first, left);
            if (!right.is_zero()) s2.set(l, cell.first, right);
            if (split_rec(cells, i + 1, s1, s2, fn)) return true;
        }
        return false;
    }

    // Enumerates all grid partial heaps h' with h' _|_ h.
    void for_each_compatible(const PartialHeap& h, const std::function<bool(const PartialHeap&)>& fn) {
        PartialHeap ext;
        compat_rec(h, 0, ext, fn);
    }

    bool compat_rec(const PartialHeap& h, int locIdx, PartialHeap& ext,
                    const std::function<bool(const PartialHeap&)>& fn) {
        if (locIdx == u_.num_locations()) return fn(ext);
        Location l = u_.location_at(locIdx);
        // absent at l
        if (compat_rec(h, locIdx + 1, ext, fn)) return true;
        bool present = h.defined_at(l);
        Perm have = present ? h.at(l).second : perm_zero();
        for (int k = 1; k <= u_.denom(); ++k) {
            Perm p = u_.grid_perm(k);
            if (have + p > perm_full()) break;
            if (present) {
                ext.set(l, h.at(l).first, p);  // value forced on overlap
                if (compat_rec(h, locIdx + 1, ext, fn)) return true;
            } else {
                for (const auto& v : u_.values()) {
                    ext.set(l, v, p);
                    if (compat_rec(h, locIdx + 1, ext, fn)) return true;
                }
            }
        }
        ext.erase(l);
        return false;
    }

    std::string memo_key(const PartialHeap& h, const Environment& env, const AssertionPtr& a) const {
        std::ostringstream os;
        os << a.get() << "|";
        for (const auto& [l, cell] : h.cells())
            os << l.obj << "." << l.field << "=" << u_.value_name(cell.first) << ","
               << cell.second.str() << ";";
        os << "|";
        for (const auto& [x, v] : env) os << x << "=" << u_.value_name(v) << ";";
        return os.str();
    }

    std::string debug_key(const AssertionPtr& a) const {
        std::ostringstream os;
        os << a.get();
        return os.str();
    }

    const Universe& u_;
    std::unordered_map<std::string, bool> memo_;
};

inline bool sl_sat(const PartialHeap& h, const Environment& env, const AssertionPtr& a,
                   const Universe& u) {
    SlOracle oracle(u);
    return oracle.sat(h, env, a);
}

}  // namespace tpl
