#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tpl {

// Exact rational arithmetic for permissions. Values are kept reduced with
// a positive denominator; no floating point anywhere.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw std::invalid_argument("rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        reduce();
    }
    static Rational integer(std::int64_t n) { return Rational(n, 1); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    static Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
    static Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

    bool is_zero() const { return num_ == 0; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void reduce() {
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }
    std::int64_t num_;
    std::int64_t den_;
};

// A permission value. Mask entries always satisfy 0 <= p <= 1; assertion
// literals additionally require p > 0. Arithmetic may leave [0,1]
// transiently (e.g. while checking mask compatibility), so the range is
// enforced by the operations that care, not by the type.
using Perm = Rational;

inline Perm perm_zero() { return Rational(0, 1); }
inline Perm perm_full() { return Rational(1, 1); }

inline bool is_mask_perm(const Perm& p) { return p >= perm_zero() && p <= perm_full(); }
inline bool is_assertion_perm(const Perm& p) { return p > perm_zero() && p <= perm_full(); }

// Parses "1", "1/2", "0" (no sign, no spaces).
inline Perm parse_perm(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(s), 1);
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad permission literal: " + s);
    }
}

}  // namespace tpl
