#pragma once

#include <map>
#include <string>
#include <utility>

#include "hdeform/rational.hpp"

namespace hdeform {

/// Polynomial in the deformation parameter h with exact rational
/// coefficients. The scalar of every object after the q -> 1 limit.
class HPoly {
 public:
  using Terms = std::map<int, Rational>;

  HPoly() = default;
  HPoly(long c) : HPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  HPoly(const Rational& c);              // NOLINT(google-explicit-constructor)
  explicit HPoly(Terms terms);

  static HPoly h(int power = 1);
  static HPoly monomial(const Rational& c, int power);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return degree() <= 0; }
  /// -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  Rational coeff(int power) const;
  Rational leading() const;
  std::size_t term_count() const { return terms_.size(); }

  HPoly operator-() const;
  HPoly& operator+=(const HPoly& o);
  HPoly& operator-=(const HPoly& o);
  HPoly& operator*=(const HPoly& o);
  friend HPoly operator+(HPoly a, const HPoly& b) { return a += b; }
  friend HPoly operator-(HPoly a, const HPoly& b) { return a -= b; }
  friend HPoly operator*(const HPoly& a, const HPoly& b);
  friend bool operator==(const HPoly& a, const HPoly& b) { return a.terms_ == b.terms_; }

  Rational operator()(const Rational& h) const;
  HPoly monic() const;
  HPoly scaled(const Rational& c) const;

  std::string to_string() const;

 private:
  void add_term(int power, const Rational& c);
  Terms terms_;
};

/// Euclidean division over Q; throws DivisionByZero when b is zero.
std::pair<HPoly, HPoly> divmod(const HPoly& a, const HPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
HPoly gcd(const HPoly& a, const HPoly& b);
/// Throws std::domain_error when b does not divide a.
HPoly exact_div(const HPoly& a, const HPoly& b);

inline std::string to_string(const HPoly& p) { return p.to_string(); }

}  // namespace hdeform
