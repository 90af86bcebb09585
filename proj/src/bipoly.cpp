#include "hdeform/bipoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "hdeform/errors.hpp"
#include "term_format.hpp"

namespace hdeform {

namespace {

// Polynomials in v with coefficients in Q[h], index = v exponent.
using UPoly = std::vector<HPoly>;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

HPoly content(const UPoly& p) {
  HPoly c;
  for (const auto& x : p) {
    c = gcd(c, x);
    if (c.is_constant() && !c.is_zero()) break;
  }
  return c;
}

UPoly div_coeffs(const UPoly& p, const HPoly& c) {
  UPoly r;
  r.reserve(p.size());
  for (const auto& x : p) r.push_back(x.is_zero() ? HPoly{} : exact_div(x, c));
  return r;
}

// Content removed and scaled so the leading rational coefficient is 1.
UPoly primitive_part(const UPoly& p) {
  if (p.empty()) return p;
  UPoly r = div_coeffs(p, content(p));
  Rational lc = r.back().leading();
  for (auto& x : r) x = x.scaled(1 / lc);
  return r;
}

// Pseudo-remainder of a by b up to a nonzero factor in Q[h].
UPoly prem(UPoly a, const UPoly& b) {
  const int db = deg(b);
  const HPoly& lb = b.back();
  while (!a.empty() && deg(a) >= db) {
    const int shift = deg(a) - db;
    HPoly lead = a.back();
    for (auto& x : a) x *= lb;
    for (int k = 0; k <= db; ++k) a[k + shift] -= lead * b[k];
    trim(a);
  }
  return a;
}

bool divides_v_minus_1(const std::vector<HPoly>& coeffs) {
  HPoly sum;
  for (const auto& c : coeffs) sum += c;
  return sum.is_zero();
}

}  // namespace

BiPoly::BiPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Key{0, 0}, c);
}

BiPoly::BiPoly(const HPoly& p) {
  for (const auto& [e, c] : p.terms()) terms_.emplace(Key{0, e}, c);
}

BiPoly BiPoly::monomial(const Rational& c, int v_exp, int h_exp) {
  if (v_exp < 0 || h_exp < 0) throw std::invalid_argument("negative exponent in polynomial");
  BiPoly p;
  p.add_term({v_exp, h_exp}, c);
  return p;
}

BiPoly BiPoly::from_v_coeffs(const std::vector<HPoly>& coeffs) {
  BiPoly p;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (const auto& [e, c] : coeffs[i].terms()) p.terms_.emplace(Key{static_cast<int>(i), e}, c);
  return p;
}

bool BiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
}

bool BiPoly::has_v() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.first != 0; });
}

bool BiPoly::all_v_even() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.first % 2 == 0; });
}

BiPoly::Key BiPoly::min_exponents() const {
  if (terms_.empty()) return {0, 0};
  Key m = terms_.begin()->first;
  for (const auto& [k, c] : terms_) {
    m.first = std::min(m.first, k.first);
    m.second = std::min(m.second, k.second);
  }
  return m;
}

void BiPoly::add_term(const Key& k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BiPoly BiPoly::operator-() const {
  BiPoly r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
  return r;
}

BiPoly BiPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  BiPoly r = *this;
  for (auto& [k, x] : r.terms_) x *= c;
  return r;
}

BiPoly BiPoly::shifted_down(int dv, int dh) const {
  if (dv == 0 && dh == 0) return *this;
  BiPoly r;
  for (const auto& [k, c] : terms_) {
    if (k.first < dv || k.second < dh) throw std::domain_error("monomial does not divide polynomial");
    r.terms_.emplace_hint(r.terms_.end(), Key{k.first - dv, k.second - dh}, c);
  }
  return r;
}

std::vector<HPoly> BiPoly::v_coeffs() const {
  std::vector<HPoly::Terms> acc(static_cast<std::size_t>(std::max(degree_v() + 1, 0)));
  for (const auto& [k, c] : terms_) acc[k.first].emplace(k.second, c);
  std::vector<HPoly> out;
  out.reserve(acc.size());
  for (auto& t : acc) out.emplace_back(std::move(t));
  return out;
}

HPoly BiPoly::at_v(const Rational& v) const {
  HPoly r;
  Rational pw = 1;
  int cur = 0;
  for (const auto& [k, c] : terms_) {
    while (cur < k.first) {
      pw *= v;
      ++cur;
    }
    r += HPoly::monomial(c * pw, k.second);
  }
  return r;
}

BiPoly BiPoly::at_h(const Rational& h) const {
  BiPoly r;
  for (const auto& [k, c] : terms_) {
    Rational pw = 1;
    for (int i = 0; i < k.second; ++i) pw *= h;
    r.add_term({k.first, 0}, c * pw);
  }
  return r;
}

Rational BiPoly::evaluate(const Rational& v, const Rational& h) const { return at_v(v)(h); }

int BiPoly::multiplicity_at_v1() const {
  if (is_zero()) throw std::domain_error("zero polynomial has no multiplicity");
  std::vector<HPoly> c = v_coeffs();
  int k = 0;
  while (divides_v_minus_1(c)) {
    // Synthetic division by (v - 1).
    std::vector<HPoly> q(c.size() - 1);
    HPoly carry;
    for (std::size_t i = c.size() - 1; i > 0; --i) {
      carry += c[i];
      q[i - 1] = carry;
    }
    c = std::move(q);
    ++k;
  }
  return k;
}

BiPoly BiPoly::div_v_minus_1() const {
  std::vector<HPoly> c = v_coeffs();
  if (c.empty() || !divides_v_minus_1(c)) throw std::domain_error("(v-1) does not divide polynomial");
  std::vector<HPoly> q(c.size() - 1);
  HPoly carry;
  for (std::size_t i = c.size() - 1; i > 0; --i) {
    carry += c[i];
    q[i - 1] = carry;
  }
  return from_v_coeffs(q);
}

std::string BiPoly::to_string(bool q_form) const {
  std::vector<std::pair<Rational, std::string>> parts;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [ev, eh] = it->first;
    std::string mono;
    if (ev != 0) mono = q_form ? detail::power("q", ev / 2) : detail::power("v", ev);
    if (eh != 0) {
      if (!mono.empty()) mono += "*";
      mono += detail::power("h", eh);
    }
    parts.emplace_back(it->second, mono);
  }
  return detail::join_terms(parts);
}

BiPoly exact_div(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (b.is_monomial()) {
    const auto& [kv, kh] = b.leading_key();
    return a.shifted_down(kv, kh).scaled(1 / b.leading_coeff());
  }
  // Lex-leading-term division is exact whenever b | a.
  BiPoly quot;
  BiPoly rem = a;
  const auto [bv, bh] = b.leading_key();
  const Rational lb = b.leading_coeff();
  while (!rem.is_zero()) {
    const auto [rv, rh] = rem.leading_key();
    if (rv < bv || rh < bh) throw std::domain_error("inexact polynomial division");
    BiPoly t = BiPoly::monomial(rem.leading_coeff() / lb, rv - bv, rh - bh);
    quot += t;
    rem -= t * b;
  }
  return quot;
}

BiPoly gcd(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero()) return b.scaled(1 / b.leading_coeff());
  if (b.is_zero()) return a.scaled(1 / a.leading_coeff());

  const auto ma = a.min_exponents();
  const auto mb = b.min_exponents();
  const int gv = std::min(ma.first, mb.first);
  const int gh = std::min(ma.second, mb.second);
  BiPoly mono = BiPoly::monomial(1, gv, gh);
  if (a.is_monomial() || b.is_monomial()) return mono;

  UPoly pa = a.shifted_down(ma.first, ma.second).v_coeffs();
  UPoly pb = b.shifted_down(mb.first, mb.second).v_coeffs();
  HPoly ca = content(pa);
  HPoly cb = content(pb);
  HPoly c = gcd(ca, cb);
  pa = primitive_part(pa);
  pb = primitive_part(pb);
  if (deg(pa) < deg(pb)) std::swap(pa, pb);
  while (!pb.empty()) {
    if (deg(pb) == 0) {
      pa = UPoly{HPoly(1)};
      break;
    }
    UPoly r = prem(pa, pb);
    pa = std::move(pb);
    pb = primitive_part(r);
  }
  BiPoly g = BiPoly::from_v_coeffs(primitive_part(pa)) * BiPoly(c) * mono;
  return g.scaled(1 / g.leading_coeff());
}

}  // namespace hdeform
