#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tpl/rational.hpp"
#include "tpl/result.hpp"
#include "tpl/universe.hpp"

namespace tpl {

struct MaskError {
    enum class Kind { Incompatible, NotSubmask };
    Kind kind;
    Location where;
};

struct PartialHeapError {
    enum class Kind { ValueClash, PermOverflow };
    Kind kind;
    Location where;
};

// A permission mask: total map Location -> Perm, stored sparsely. The
// canonical form never stores zero entries, so structural equality is
// semantic equality.
class PermMask {
public:
    PermMask() = default;

    Perm at(const Location& l) const {
        auto it = entries_.find(l);
        return it == entries_.end() ? perm_zero() : it->second;
    }
    void set(const Location& l, const Perm& p) {
        if (p.is_zero()) entries_.erase(l);
        else entries_[l] = p;
    }
    const std::map<Location, Perm>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    friend bool operator==(const PermMask& a, const PermMask& b) { return a.entries_ == b.entries_; }
    friend bool operator!=(const PermMask& a, const PermMask& b) { return !(a == b); }

private:
    std::map<Location, Perm> entries_;
};

// Pointwise sum; defined iff every pointwise sum stays <= 1. Reports the
// first offending location in universe order.
inline Result<PermMask, MaskError> mask_combine(const PermMask& p1, const PermMask& p2,
                                                const Universe& u) {
    PermMask out = p1;
    for (const auto& [l, q] : p2.entries()) out.set(l, out.at(l) + q);
    for (int i = 0; i < u.num_locations(); ++i) {
        Location l = u.location_at(i);
        if (out.at(l) > perm_full())
            return Result<PermMask, MaskError>::err({MaskError::Kind::Incompatible, l});
    }
    return Result<PermMask, MaskError>::ok(std::move(out));
}

inline bool masks_compatible(const PermMask& p1, const PermMask& p2) {
    for (const auto& [l, q] : p2.entries())
        if (p1.at(l) + q > perm_full()) return false;
    return true;
}

// Permission mask extension p1 <= p2, pointwise.
inline bool mask_leq(const PermMask& p1, const PermMask& p2) {
    for (const auto& [l, q] : p1.entries())
        if (q > p2.at(l)) return false;
    return true;
}

// Pointwise difference; defined iff p2 <= p1 pointwise. Reports the first
// offending location in universe order.
inline Result<PermMask, MaskError> mask_subtract(const PermMask& p1, const PermMask& p2,
                                                 const Universe& u) {
    for (int i = 0; i < u.num_locations(); ++i) {
        Location l = u.location_at(i);
        if (p2.at(l) > p1.at(l))
            return Result<PermMask, MaskError>::err({MaskError::Kind::NotSubmask, l});
    }
    PermMask out = p1;
    for (const auto& [l, q] : p2.entries()) out.set(l, out.at(l) - q);
    return Result<PermMask, MaskError>::ok(std::move(out));
}

inline PermMask mask_glb(const PermMask& p1, const PermMask& p2) {
    PermMask out;
    for (const auto& [l, q] : p1.entries()) out.set(l, Rational::min(q, p2.at(l)));
    return out;
}

inline PermMask mask_lub(const PermMask& p1, const PermMask& p2) {
    PermMask out = p1;
    for (const auto& [l, q] : p2.entries()) out.set(l, Rational::max(out.at(l), q));
    return out;
}

// Locations with non-zero permission, in universe order.
inline std::vector<Location> rds(const PermMask& p) {
    std::vector<Location> out;
    for (const auto& [l, q] : p.entries()) out.push_back(l);
    return out;
}

// A total heap: defined at every location of the universe.
class TotalHeap {
public:
    explicit TotalHeap(const Universe& u)
        : cells_(static_cast<std::size_t>(u.num_locations()), u.values().front()) {}

    const Value& at(const Universe& u, const Location& l) const {
        return cells_.at(static_cast<std::size_t>(u.location_index(l)));
    }
    void set(const Universe& u, const Location& l, const Value& v) {
        cells_.at(static_cast<std::size_t>(u.location_index(l))) = v;
    }
    const std::vector<Value>& cells() const { return cells_; }

    friend bool operator==(const TotalHeap& a, const TotalHeap& b) { return a.cells_ == b.cells_; }
    friend bool operator!=(const TotalHeap& a, const TotalHeap& b) { return !(a == b); }

private:
    std::vector<Value> cells_;
};

// A partial fractional heap: partial map Location -> (value, perm) with
// every stored permission strictly positive.
class PartialHeap {
public:
    using Cell = std::pair<Value, Perm>;

    bool defined_at(const Location& l) const { return cells_.count(l) > 0; }
    const Cell& at(const Location& l) const { return cells_.at(l); }
    void set(const Location& l, const Value& v, const Perm& p) {
        if (!(p > perm_zero())) throw std::invalid_argument("partial heap: non-positive permission");
        cells_[l] = {v, p};
    }
    void erase(const Location& l) { cells_.erase(l); }
    const std::map<Location, Cell>& cells() const { return cells_; }
    bool empty() const { return cells_.empty(); }

    friend bool operator==(const PartialHeap& a, const PartialHeap& b) { return a.cells_ == b.cells_; }
    friend bool operator!=(const PartialHeap& a, const PartialHeap& b) { return !(a == b); }

private:
    std::map<Location, Cell> cells_;
};

// Combination of partial heaps: union of domains, permissions added on the
// overlap, values must agree there and sums stay <= 1.
inline Result<PartialHeap, PartialHeapError> partial_combine(const PartialHeap& h1,
                                                             const PartialHeap& h2) {
    PartialHeap out = h1;
    for (const auto& [l, cell] : h2.cells()) {
        if (!out.defined_at(l)) {
            out.set(l, cell.first, cell.second);
            continue;
        }
        const auto& mine = out.at(l);
        if (mine.first != cell.first)
            return Result<PartialHeap, PartialHeapError>::err({PartialHeapError::Kind::ValueClash, l});
        Perm sum = mine.second + cell.second;
        if (sum > perm_full())
            return Result<PartialHeap, PartialHeapError>::err({PartialHeapError::Kind::PermOverflow, l});
        out.set(l, mine.first, sum);
    }
    return Result<PartialHeap, PartialHeapError>::ok(std::move(out));
}

inline bool partial_compatible(const PartialHeap& h1, const PartialHeap& h2) {
    for (const auto& [l, cell] : h2.cells()) {
        if (!h1.defined_at(l)) continue;
        const auto& mine = h1.at(l);
        if (mine.first != cell.first || mine.second + cell.second > perm_full()) return false;
    }
    return true;
}

// Restriction of a total heap to a mask's readable locations.
inline PartialHeap restrict_heap(const TotalHeap& h, const PermMask& p, const Universe& u) {
    PartialHeap out;
    for (const auto& [l, q] : p.entries()) out.set(l, h.at(u, l), q);
    return out;
}

inline bool heaps_agree(const TotalHeap& h1, const TotalHeap& h2, const std::vector<Location>& locs,
                        const Universe& u) {
    for (const auto& l : locs)
        if (h1.at(u, l) != h2.at(u, l)) return false;
    return true;
}

// result[l] = h1[l] if l in locs else h2[l].
inline TotalHeap cond_merge(const std::vector<Location>& locs, const TotalHeap& h1,
                            const TotalHeap& h2, const Universe& u) {
    TotalHeap out = h2;
    for (const auto& l : locs) out.set(u, l, h1.at(u, l));
    return out;
}

// An environment: partial map from variable names to values.
using Environment = std::map<std::string, Value>;

// The TPL evaluation state (H, Pi, sigma).
struct State {
    TotalHeap heap;
    PermMask mask;
    Environment env;
};

inline std::string render_mask(const PermMask& m, const Universe& u) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, q] : m.entries()) {
        if (!first) os << " ";
        first = false;
        os << u.location_name(l) << "=" << q.str();
    }
    return os.str();
}

inline std::string render_state(const State& s, const Universe& u) {
    std::ostringstream os;
    os << "heap:";
    for (int i = 0; i < u.num_locations(); ++i) {
        Location l = u.location_at(i);
        os << " " << u.location_name(l) << "=" << u.value_name(s.heap.at(u, l));
    }
    os << " ; mask: " << render_mask(s.mask, u) << " ; env:";
    for (const auto& [x, v] : s.env) os << " " << x << "=" << u.value_name(v);
    return os.str();
}

inline std::string render_partial_heap(const PartialHeap& h, const Universe& u) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [l, cell] : h.cells()) {
        if (!first) os << ", ";
        first = false;
        os << u.location_name(l) << "=(" << u.value_name(cell.first) << "," << cell.second.str() << ")";
    }
    os << "}";
    return os.str();
}

}  // namespace tpl
