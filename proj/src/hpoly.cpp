#include "hdeform/hpoly.hpp"

#include <stdexcept>

#include "hdeform/errors.hpp"
#include "term_format.hpp"

namespace hdeform {

HPoly::HPoly(const Rational& c) {
  if (c != 0) terms_.emplace(0, c);
}

HPoly::HPoly(Terms terms) {
  for (auto& [e, c] : terms) {
    if (e < 0) throw std::invalid_argument("negative h exponent");
    if (c != 0) terms_.emplace(e, c);
  }
}

HPoly HPoly::h(int power) { return monomial(Rational(1), power); }

HPoly HPoly::monomial(const Rational& c, int power) {
  HPoly p;
  p.add_term(power, c);
  return p;
}

Rational HPoly::coeff(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational HPoly::leading() const { return terms_.empty() ? Rational(0) : terms_.rbegin()->second; }

void HPoly::add_term(int power, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(power, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

HPoly HPoly::operator-() const {
  HPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

HPoly& HPoly::operator+=(const HPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

HPoly& HPoly::operator-=(const HPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

HPoly& HPoly::operator*=(const HPoly& o) { return *this = *this * o; }

HPoly operator*(const HPoly& a, const HPoly& b) {
  HPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

Rational HPoly::operator()(const Rational& h) const {
  // Horner over the sparse exponent list, highest first.
  Rational acc = 0;
  int prev = degree();
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    for (int k = it->first; k < prev; ++k) acc *= h;
    acc += it->second;
    prev = it->first;
  }
  for (int k = 0; k < prev; ++k) acc *= h;
  return acc;
}

HPoly HPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  HPoly r = *this;
  for (auto& [e, x] : r.terms_) x *= c;
  return r;
}

HPoly HPoly::monic() const {
  if (is_zero()) return {};
  return scaled(1 / leading());
}

std::string HPoly::to_string() const {
  std::vector<std::pair<Rational, std::string>> parts;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    parts.emplace_back(it->second, it->first == 0 ? "" : detail::power("h", it->first));
  return detail::join_terms(parts);
}

std::pair<HPoly, HPoly> divmod(const HPoly& a, const HPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  HPoly quot;
  HPoly rem = a;
  const int db = b.degree();
  const Rational lb = b.leading();
  while (!rem.is_zero() && rem.degree() >= db) {
    HPoly t = HPoly::monomial(rem.leading() / lb, rem.degree() - db);
    quot += t;
    rem -= t * b;
  }
  return {quot, rem};
}

HPoly gcd(const HPoly& a, const HPoly& b) {
  HPoly x = a;
  HPoly y = b;
  while (!y.is_zero()) {
    HPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

HPoly exact_div(const HPoly& a, const HPoly& b) {
  auto [quot, rem] = divmod(a, b);
  if (!rem.is_zero()) throw std::domain_error("inexact polynomial division in h");
  return quot;
}

}  // namespace hdeform
