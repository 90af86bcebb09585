#pragma once

#include <concepts>
#include <string>
#include <string_view>

#include "hdeform/errors.hpp"
#include "hdeform/hpoly.hpp"
#include "hdeform/ratfunc.hpp"

namespace hdeform {

template <class S>
concept Scalar = std::regular<S> && requires(S a, S b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.term_count() } -> std::convertible_to<std::size_t>;
  { a.to_string() } -> std::convertible_to<std::string>;
  S(1);
};

template <class S>
concept FieldScalar = Scalar<S> && requires(S a, S b) {
  { a / b } -> std::convertible_to<S>;
};

template <class S>
S parse_scalar(std::string_view text);

template <>
inline RatFunc parse_scalar<RatFunc>(std::string_view text) {
  return parse_ratfunc(text);
}

template <>
inline HPoly parse_scalar<HPoly>(std::string_view text) {
  auto p = parse_ratfunc(text).as_hpoly();
  if (!p) throw ParseError("not a polynomial in h: " + std::string(text));
  return *p;
}

inline RatFunc lift(const HPoly& p) { return RatFunc(p); }
inline RatFunc lift(const RatFunc& f) { return f; }

/// Converts back to an h-polynomial; throws NonPolynomialInH otherwise.
inline HPoly lower_to_hpoly(const RatFunc& f) {
  auto p = f.as_hpoly();
  if (!p) throw NonPolynomialInH(f.to_string());
  return *p;
}

}  // namespace hdeform
