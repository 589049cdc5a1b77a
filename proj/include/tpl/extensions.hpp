#pragma once

#include <functional>
#include <vector>

#include "tpl/state.hpp"
#include "tpl/universe.hpp"

namespace tpl {

enum class ExtensionKind { LocalExts, GlobalExts, LocalDisjExts, GlobalDisjExts };

namespace detail {

// Enumerates grid masks P' compatible with `mask` (pointwise sum <= 1),
// in odometer order over locations. Stops early if fn returns true.
inline bool for_each_compatible_mask(const PermMask& mask, const Universe& u,
                                     const std::function<bool(const PermMask&)>& fn) {
    int n = u.num_locations();
    std::vector<int> caps(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        Perm have = mask.at(u.location_at(i));
        int cap = 0;
        for (int k = 0; k <= u.denom(); ++k)
            if (have + u.grid_perm(k) <= perm_full()) cap = k;
        caps[static_cast<std::size_t>(i)] = cap;
    }
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    while (true) {
        PermMask ext;
        for (int i = 0; i < n; ++i)
            if (digits[static_cast<std::size_t>(i)] > 0)
                ext.set(u.location_at(i), u.grid_perm(digits[static_cast<std::size_t>(i)]));
        if (fn(ext)) return true;
        int i = 0;
        while (i < n) {
            if (++digits[static_cast<std::size_t>(i)] <= caps[static_cast<std::size_t>(i)]) break;
            digits[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == n) break;
    }
    return false;
}

// Enumerates heaps that agree with `h` outside `havoc`, odometer order.
inline bool for_each_havoc(const TotalHeap& h, const std::vector<Location>& havoc,
                           const Universe& u, const std::function<bool(const TotalHeap&)>& fn) {
    if (havoc.empty()) return fn(h);
    std::vector<int> digits(havoc.size(), 0);
    int nv = u.num_values();
    while (true) {
        TotalHeap h2 = h;
        for (std::size_t i = 0; i < havoc.size(); ++i)
            h2.set(u, havoc[i], u.values()[static_cast<std::size_t>(digits[i])]);
        if (fn(h2)) return true;
        std::size_t i = 0;
        while (i < havoc.size()) {
            if (++digits[i] < nv) break;
            digits[i] = 0;
            ++i;
        }
        if (i == havoc.size()) break;
    }
    return false;
}

inline std::vector<Location> havoc_set(const PermMask& mask, const PermMask& ext, bool global,
                                       const Universe& u) {
    std::vector<Location> out;
    for (int i = 0; i < u.num_locations(); ++i) {
        Location l = u.location_at(i);
        if (!mask.at(l).is_zero()) continue;  // readable locations never change
        if (global || !ext.at(l).is_zero()) out.push_back(l);
    }
    return out;
}

}  // namespace detail

// The four state-extension sets, restricted to the universe's grid. Local
// variants havoc only the newly-readable locations; global variants havoc
// everything previously unreadable. Disjoint variants keep the extra mask
// alone. Deterministic order: extra mask outer (odometer), heap havoc inner.
inline std::vector<State> enumerate_extensions(const State& s, ExtensionKind kind,
                                               const Universe& u) {
    bool global = kind == ExtensionKind::GlobalExts || kind == ExtensionKind::GlobalDisjExts;
    bool disjoint = kind == ExtensionKind::LocalDisjExts || kind == ExtensionKind::GlobalDisjExts;
    std::vector<State> out;
    detail::for_each_compatible_mask(s.mask, u, [&](const PermMask& ext) {
        PermMask result_mask = disjoint ? ext : mask_combine(s.mask, ext, u).value();
        auto havoc = detail::havoc_set(s.mask, ext, global, u);
        detail::for_each_havoc(s.heap, havoc, u, [&](const TotalHeap& h2) {
            out.push_back(State{h2, result_mask, s.env});
            return false;
        });
        return false;
    });
    return out;
}

}  // namespace tpl
