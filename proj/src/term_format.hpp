#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hdeform/rational.hpp"

namespace hdeform::detail {

// Joins (coefficient, monomial) pairs into "a*m1 + m2 - b*m3". An empty
// monomial denotes a constant term.
inline std::string join_terms(const std::vector<std::pair<Rational, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, mono] : terms) {
    bool negative = sgn(c) < 0;
    Rational mag = negative ? Rational(-c) : c;
    std::string body;
    if (mono.empty()) {
      body = to_string(mag);
    } else if (mag == 1) {
      body = mono;
    } else {
      body = to_string(mag) + "*" + mono;
    }
    if (first) {
      out = negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

inline std::string power(const char* var, int e) {
  if (e == 1) return var;
  return std::string(var) + "^" + std::to_string(e);
}

}  // namespace hdeform::detail
