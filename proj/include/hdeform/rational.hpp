#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hdeform {

// Canonical by construction through the helpers below: gcd(num, den) = 1, den > 0.
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace hdeform
