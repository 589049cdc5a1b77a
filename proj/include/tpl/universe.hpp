#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpl/rational.hpp"

namespace tpl {

// A value: null, an integer, or an object identifier (index into the
// universe's object list).
struct Value {
    enum class Kind : std::uint8_t { Null, Int, Obj };
    Kind kind = Kind::Null;
    std::int64_t n = 0;  // integer payload
    int obj = -1;        // object index payload

    static Value null() { return Value{}; }
    static Value integer(std::int64_t v) { return Value{Kind::Int, v, -1}; }
    static Value object(int idx) { return Value{Kind::Obj, 0, idx}; }

    bool is_null() const { return kind == Kind::Null; }
    bool is_int() const { return kind == Kind::Int; }
    bool is_object() const { return kind == Kind::Obj; }

    friend bool operator==(const Value& a, const Value& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == Kind::Int) return a.n == b.n;
        if (a.kind == Kind::Obj) return a.obj == b.obj;
        return true;
    }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
};

// An object-field location.
struct Location {
    int obj = 0;
    int field = 0;
    friend bool operator==(const Location& a, const Location& b) {
        return a.obj == b.obj && a.field == b.field;
    }
    friend bool operator!=(const Location& a, const Location& b) { return !(a == b); }
    friend bool operator<(const Location& a, const Location& b) {
        return a.obj != b.obj ? a.obj < b.obj : a.field < b.field;
    }
};

// Finite enumeration bounds. Objects, fields and values keep their
// declaration order; that order fixes iteration order and first-error
// reporting everywhere.
class Universe {
public:
    Universe(std::vector<std::string> objects, std::vector<std::string> fields,
             std::vector<Value> base_values, int denom)
        : objects_(std::move(objects)), fields_(std::move(fields)), denom_(denom) {
        if (objects_.empty()) throw std::invalid_argument("universe: no objects");
        if (fields_.empty()) throw std::invalid_argument("universe: no fields");
        if (denom_ < 1) throw std::invalid_argument("universe: denominator must be >= 1");
        // null and all object ids are values; keep declared order, append
        // whatever is missing.
        values_ = std::move(base_values);
        auto ensure = [this](const Value& v) {
            for (const auto& w : values_)
                if (w == v) return;
            values_.push_back(v);
        };
        ensure(Value::null());
        for (int i = 0; i < static_cast<int>(objects_.size()); ++i) ensure(Value::object(i));
    }

    // The desk-scale default: two objects, two fields, the paper's favourite
    // integer literals, and half permissions.
    static Universe default_u0() {
        return Universe({"o1", "o2"}, {"f", "g"},
                        {Value::null(), Value::integer(0), Value::integer(1),
                         Value::integer(3), Value::integer(5)},
                        2);
    }

    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<std::string>& fields() const { return fields_; }
    const std::vector<Value>& values() const { return values_; }
    int denom() const { return denom_; }

    int num_objects() const { return static_cast<int>(objects_.size()); }
    int num_fields() const { return static_cast<int>(fields_.size()); }
    int num_values() const { return static_cast<int>(values_.size()); }
    int num_locations() const { return num_objects() * num_fields(); }

    int location_index(const Location& l) const { return l.obj * num_fields() + l.field; }
    Location location_at(int idx) const { return Location{idx / num_fields(), idx % num_fields()}; }

    std::optional<int> object_index(const std::string& name) const {
        for (int i = 0; i < num_objects(); ++i)
            if (objects_[i] == name) return i;
        return std::nullopt;
    }
    std::optional<int> field_index(const std::string& name) const {
        for (int i = 0; i < num_fields(); ++i)
            if (fields_[i] == name) return i;
        return std::nullopt;
    }
    int require_field(const std::string& name) const {
        auto i = field_index(name);
        if (!i) throw std::invalid_argument("unknown field: " + name);
        return *i;
    }
    std::optional<int> value_index(const Value& v) const {
        for (int i = 0; i < num_values(); ++i)
            if (values_[i] == v) return i;
        return std::nullopt;
    }
    bool contains_value(const Value& v) const { return value_index(v).has_value(); }

    // Grid permission k/denom.
    Perm grid_perm(int k) const { return Rational(k, denom_); }
    // Largest k with k/denom <= p.
    int grid_floor(const Perm& p) const {
        int lo = 0;
        for (int k = denom_; k >= 0; --k)
            if (grid_perm(k) <= p) { lo = k; break; }
        return lo;
    }
    bool on_grid(const Perm& p) const {
        return is_mask_perm(p) && denom_ % p.den() == 0;
    }

    std::string value_name(const Value& v) const {
        if (v.is_null()) return "null";
        if (v.is_int()) return std::to_string(v.n);
        return objects_.at(v.obj);
    }
    std::string location_name(const Location& l) const {
        return objects_.at(l.obj) + "." + fields_.at(l.field);
    }

private:
    std::vector<std::string> objects_;
    std::vector<std::string> fields_;
    std::vector<Value> values_;
    int denom_;
};

// --- universe file format -------------------------------------------------
//
//   # comment
//   objects = o1 o2
//   fields  = f g
//   values  = null 0 1 3 5
//   denominator = 2
//
// Object ids listed under `objects` are implicitly values.

inline Universe parse_universe(std::istream& in) {
    std::vector<std::string> objects, fields, value_tokens;
    int denom = -1;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("universe file, line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::string eq;
        if (!(ls >> eq) || eq != "=") fail("expected '=' after '" + key + "'");
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (key == "objects") objects = toks;
        else if (key == "fields") fields = toks;
        else if (key == "values") value_tokens = toks;
        else if (key == "denominator") {
            if (toks.size() != 1) fail("denominator wants one integer");
            denom = std::stoi(toks[0]);
        } else fail("unknown key '" + key + "'");
    }
    if (objects.empty()) throw std::invalid_argument("universe file: missing objects");
    if (fields.empty()) throw std::invalid_argument("universe file: missing fields");
    if (denom < 1) throw std::invalid_argument("universe file: missing denominator");
    std::vector<Value> vals;
    for (const auto& t : value_tokens) {
        if (t == "null") { vals.push_back(Value::null()); continue; }
        auto it = std::find(objects.begin(), objects.end(), t);
        if (it != objects.end()) {
            vals.push_back(Value::object(static_cast<int>(it - objects.begin())));
            continue;
        }
        try {
            vals.push_back(Value::integer(std::stoll(t)));
        } catch (const std::exception&) {
            throw std::invalid_argument("universe file: bad value token '" + t + "'");
        }
    }
    return Universe(objects, fields, vals, denom);
}

inline Universe load_universe(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open universe file: " + path);
    return parse_universe(f);
}

inline std::string render_universe(const Universe& u) {
    std::ostringstream os;
    os << "objects =";
    for (const auto& o : u.objects()) os << " " << o;
    os << "\nfields =";
    for (const auto& f : u.fields()) os << " " << f;
    os << "\nvalues =";
    for (const auto& v : u.values()) os << " " << u.value_name(v);
    os << "\ndenominator = " << u.denom() << "\n";
    return os.str();
}

}  // namespace tpl
