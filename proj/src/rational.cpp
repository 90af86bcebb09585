#include "hdeform/rational.hpp"

#include <string>

#include "hdeform/errors.hpp"

namespace hdeform {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("bad rational: " + s);
  if (r.get_den() == 0) throw DivisionByZero();
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace hdeform
