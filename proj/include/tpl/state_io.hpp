#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "tpl/state.hpp"
#include "tpl/universe.hpp"

namespace tpl {

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

inline Value parse_value_token(const std::string& t, const Universe& u) {
    if (t == "null") return Value::null();
    if (auto oi = u.object_index(t)) return Value::object(*oi);
    try {
        Value v = Value::integer(std::stoll(t));
        if (!u.contains_value(v)) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("state literal: unknown value '" + t + "'");
    }
}

inline Location parse_location_token(const std::string& t, const Universe& u) {
    auto dot = t.find('.');
    if (dot == std::string::npos)
        throw std::invalid_argument("state literal: expected obj.field, got '" + t + "'");
    auto oi = u.object_index(t.substr(0, dot));
    auto fi = u.field_index(t.substr(dot + 1));
    if (!oi || !fi) throw std::invalid_argument("state literal: unknown location '" + t + "'");
    return Location{*oi, *fi};
}

}  // namespace detail

// Parses the CLI state literal:
//   heap: o1.f=5 o1.g=null ; mask: o1.f=1/2 ; env: x=o1 y=o2
// Unlisted heap cells default to the first universe value; unlisted mask
// cells default to 0. The env section may be empty for closed assertions.
inline State parse_state_literal(const std::string& text, const Universe& u) {
    State s{TotalHeap(u), PermMask{}, Environment{}};
    std::vector<std::string> sections;
    {
        std::string cur;
        std::istringstream is(text);
        for (std::string tok; is >> tok;) {
            if (tok == ";") {
                sections.push_back(cur);
                cur.clear();
            } else {
                cur += tok + " ";
            }
        }
        sections.push_back(cur);
    }
    for (const auto& section : sections) {
        auto toks = detail::split_tokens(section);
        if (toks.empty()) continue;
        std::string head = toks.front();
        // allow both "heap:" and "heap :"
        std::size_t start = 1;
        if (head.back() != ':') {
            if (toks.size() < 2 || toks[1] != ":")
                throw std::invalid_argument("state literal: expected 'heap:', 'mask:' or 'env:'");
            start = 2;
        } else {
            head.pop_back();
        }
        for (std::size_t i = start; i < toks.size(); ++i) {
            const std::string& t = toks[i];
            auto eq = t.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("state literal: expected key=value, got '" + t + "'");
            std::string key = t.substr(0, eq), val = t.substr(eq + 1);
            if (head == "heap") {
                s.heap.set(u, detail::parse_location_token(key, u), detail::parse_value_token(val, u));
            } else if (head == "mask") {
                Perm p = parse_perm(val);
                if (!is_mask_perm(p))
                    throw std::invalid_argument("state literal: mask entry out of [0,1]: " + val);
                s.mask.set(detail::parse_location_token(key, u), p);
            } else if (head == "env") {
                s.env[key] = detail::parse_value_token(val, u);
            } else {
                throw std::invalid_argument("state literal: unknown section '" + head + "'");
            }
        }
    }
    return s;
}

}  // namespace tpl
