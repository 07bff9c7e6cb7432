// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dbmai {

using Integer = std::int64_t;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when fixed-width coefficient arithmetic would wrap.
class OverflowError : public std::overflow_error {
  public:
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

enum class CoefficientMode { integer, rational };

template <typename T>
struct CoefficientTraits;

template <>
struct CoefficientTraits<Integer> {
    static constexpr bool integral = true;
    static constexpr CoefficientMode mode = CoefficientMode::integer;

    static Integer add(Integer a, Integer b) {
        Integer r{};
        if (__builtin_add_overflow(a, b, &r)) {
            throw OverflowError("integer overflow in addition");
        }
        return r;
    }
    static Integer sub(Integer a, Integer b) {
        Integer r{};
        if (__builtin_sub_overflow(a, b, &r)) {
            throw OverflowError("integer overflow in subtraction");
        }
        return r;
    }
    static Integer mul(Integer a, Integer b) {
        Integer r{};
        if (__builtin_mul_overflow(a, b, &r)) {
            throw OverflowError("integer overflow in multiplication");
        }
        return r;
    }
    static Integer neg(Integer a) {
        if (a == std::numeric_limits<Integer>::min()) {
            throw OverflowError("integer overflow in negation");
        }
        return -a;
    }
    static Integer from_integer(Integer v) { return v; }
    static std::string to_string(Integer v) { return std::to_string(v); }
};

template <>
struct CoefficientTraits<Rational> {
    static constexpr bool integral = false;
    static constexpr CoefficientMode mode = CoefficientMode::rational;

    static Rational add(const Rational& a, const Rational& b) { return a + b; }
    static Rational sub(const Rational& a, const Rational& b) { return a - b; }
    static Rational mul(const Rational& a, const Rational& b) { return a * b; }
    static Rational neg(const Rational& a) { return -a; }
    static Rational from_integer(Integer v) { return Rational(v); }
    static std::string to_string(const Rational& v) {
        if (boost::multiprecision::denominator(v) == 1) {
            return boost::multiprecision::numerator(v).str();
        }
        return boost::multiprecision::numerator(v).str() + "/" + boost::multiprecision::denominator(v).str();
    }
};

/// Exact, totally ordered coefficient ring usable as DBM entries.
template <typename T>
concept Coefficient = std::totally_ordered<T> && requires(const T& a, Integer i) {
    { CoefficientTraits<T>::add(a, a) } -> std::convertible_to<T>;
    { CoefficientTraits<T>::sub(a, a) } -> std::convertible_to<T>;
    { CoefficientTraits<T>::mul(a, a) } -> std::convertible_to<T>;
    { CoefficientTraits<T>::neg(a) } -> std::convertible_to<T>;
    { CoefficientTraits<T>::from_integer(i) } -> std::convertible_to<T>;
    { CoefficientTraits<T>::to_string(a) } -> std::convertible_to<std::string>;
};

template <Coefficient T>
T checked_add(const T& a, const T& b) {
    return CoefficientTraits<T>::add(a, b);
}
template <Coefficient T>
T checked_sub(const T& a, const T& b) {
    return CoefficientTraits<T>::sub(a, b);
}
template <Coefficient T>
T checked_mul(const T& a, const T& b) {
    return CoefficientTraits<T>::mul(a, b);
}
template <Coefficient T>
T checked_neg(const T& a) {
    return CoefficientTraits<T>::neg(a);
}
template <Coefficient T>
T coefficient(Integer v) {
    return CoefficientTraits<T>::from_integer(v);
}
template <Coefficient T>
std::string coefficient_string(const T& v) {
    return CoefficientTraits<T>::to_string(v);
}

} // namespace dbmai
