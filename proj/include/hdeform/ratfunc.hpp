#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hdeform/bipoly.hpp"
#include "hdeform/hpoly.hpp"
#include "hdeform/rational.hpp"

namespace hdeform {

/// Exact rational function in v and h with q = v^2. Always stored
/// reduced, with a monic denominator (lex order, v > h), so that equal
/// values have identical representations.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}                // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c) : num_(c), den_(1) {}     // NOLINT(google-explicit-constructor)
  RatFunc(const HPoly& p) : num_(p), den_(1) {}        // NOLINT(google-explicit-constructor)
  RatFunc(BiPoly num, BiPoly den);

  static RatFunc v(int power = 1);
  static RatFunc q(int power = 1) { return v(2 * power); }
  static RatFunc h(int power = 1);

  const BiPoly& num() const { return num_; }
  const BiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool has_v() const { return num_.has_v() || den_.has_v(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Rough size measure used for residual ranking.
  std::size_t term_count() const { return num_.term_count() + den_.term_count(); }

  /// The value as an h-polynomial, if it has no v and a constant denominator.
  std::optional<HPoly> as_hpoly() const;
  /// Substitutes h; throws DivisionByZero on a pole.
  RatFunc at_h(const Rational& h) const;
  /// Full numeric evaluation; throws DivisionByZero on a pole.
  Rational evaluate(const Rational& v, const Rational& h) const;

  /// Emits q-powers when every v exponent is even, v-powers otherwise.
  std::string to_string() const;

 private:
  void normalize();
  BiPoly num_;
  BiPoly den_;
};

/// Multiplicity of (v - 1) in the numerator minus that in the denominator.
/// Throws std::domain_error for zero.
int order_at_q1(const RatFunc& f);

/// Exact value at v = 1. Throws PoleAtQ1 when order_at_q1(f) < 0 and
/// NonPolynomialInH when the value has h in a denominator.
HPoly limit_q1(const RatFunc& f);

/// Grammar: integers, q, h, v, + - * / ^ ( ); exponents are (signed) integers.
RatFunc parse_ratfunc(std::string_view text);

inline std::string to_string(const RatFunc& f) { return f.to_string(); }

}  // namespace hdeform
