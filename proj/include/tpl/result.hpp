#pragma once

#include <stdexcept>
#include <utility>
#include <variant>

namespace tpl {

// Small success-or-error carrier for the partial operations whose failures
// are reportable data rather than exceptional conditions.
template <typename T, typename E>
class Result {
public:
    static Result ok(T v) { return Result(std::variant<T, E>(std::in_place_index<0>, std::move(v))); }
    static Result err(E e) { return Result(std::variant<T, E>(std::in_place_index<1>, std::move(e))); }

    bool has_value() const { return v_.index() == 0; }
    explicit operator bool() const { return has_value(); }

    const T& value() const {
        if (!has_value()) throw std::logic_error("Result: no value");
        return std::get<0>(v_);
    }
    const E& error() const {
        if (has_value()) throw std::logic_error("Result: no error");
        return std::get<1>(v_);
    }

private:
    explicit Result(std::variant<T, E> v) : v_(std::move(v)) {}
    std::variant<T, E> v_;
};

}  // namespace tpl
