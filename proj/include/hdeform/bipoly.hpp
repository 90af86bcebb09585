#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hdeform/hpoly.hpp"
#include "hdeform/rational.hpp"

namespace hdeform {

/// Polynomial in v and h over Q (q = v^2). Terms are keyed by
/// (v exponent, h exponent); std::map order is lexicographic with v > h,
/// so the leading term is the last entry.
class BiPoly {
 public:
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, Rational>;

  BiPoly() = default;
  BiPoly(long c) : BiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  BiPoly(const Rational& c);               // NOLINT(google-explicit-constructor)
  explicit BiPoly(const HPoly& p);

  static BiPoly monomial(const Rational& c, int v_exp, int h_exp);
  static BiPoly from_v_coeffs(const std::vector<HPoly>& coeffs);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const;
  bool has_v() const;
  bool all_v_even() const;
  int degree_v() const { return terms_.empty() ? -1 : terms_.rbegin()->first.first; }
  const Key& leading_key() const { return terms_.rbegin()->first; }
  const Rational& leading_coeff() const { return terms_.rbegin()->second; }
  /// Componentwise minimum exponents over all terms.
  Key min_exponents() const;
  std::size_t term_count() const { return terms_.size(); }

  BiPoly operator-() const;
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

  BiPoly scaled(const Rational& c) const;
  /// Divides every exponent by the monomial v^dv h^dh (must divide).
  BiPoly shifted_down(int dv, int dh) const;

  /// Coefficients of v^0, v^1, ... as polynomials in h.
  std::vector<HPoly> v_coeffs() const;
  HPoly at_v(const Rational& v) const;
  BiPoly at_h(const Rational& h) const;
  Rational evaluate(const Rational& v, const Rational& h) const;

  /// Largest k with (v-1)^k | p; p nonzero.
  int multiplicity_at_v1() const;
  /// p / (v-1); requires (v-1) | p.
  BiPoly div_v_minus_1() const;

  std::string to_string(bool q_form) const;

 private:
  void add_term(const Key& k, const Rational& c);
  Terms terms_;
};

/// Exact quotient; throws std::domain_error if b does not divide a.
BiPoly exact_div(const BiPoly& a, const BiPoly& b);
/// gcd in Q[v,h], normalized to leading coefficient 1.
BiPoly gcd(const BiPoly& a, const BiPoly& b);

}  // namespace hdeform
