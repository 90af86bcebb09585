#include "hdeform/ratfunc.hpp"

#include <cctype>
#include <stdexcept>

#include "hdeform/errors.hpp"

namespace hdeform {

RatFunc::RatFunc(BiPoly num, BiPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

void RatFunc::normalize() {
  if (den_.is_zero()) throw DivisionByZero();
  if (num_.is_zero()) {
    den_ = BiPoly(1);
    return;
  }
  if (!den_.is_constant()) {
    BiPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
  }
  Rational lc = den_.leading_coeff();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFunc RatFunc::v(int power) {
  if (power >= 0) return {BiPoly::monomial(1, power, 0), BiPoly(1)};
  return {BiPoly(1), BiPoly::monomial(1, -power, 0)};
}

RatFunc RatFunc::h(int power) {
  if (power >= 0) return {BiPoly::monomial(1, 0, power), BiPoly(1)};
  return {BiPoly(1), BiPoly::monomial(1, 0, -power)};
}

bool RatFunc::is_one() const { return den_.is_constant() && num_ == BiPoly(1); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    // Common denominator may now share a factor with the sum.
    normalize();
    return *this;
  }
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ += o.num_;  // both monic constants, i.e. 1
    return *this;
  }
  BiPoly g = gcd(den_, o.den_);
  BiPoly a = exact_div(o.den_, g);
  BiPoly b = exact_div(den_, g);
  num_ = num_ * a + o.num_ * b;
  den_ = den_ * a;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ = num_ * o.num_;
    return *this;
  }
  // Cross-cancel first to keep intermediate sizes small.
  BiPoly g1 = gcd(num_, o.den_);
  BiPoly g2 = gcd(o.num_, den_);
  BiPoly n = exact_div(num_, g1) * exact_div(o.num_, g2);
  BiPoly d = exact_div(den_, g2) * exact_div(o.den_, g1);
  num_ = std::move(n);
  den_ = std::move(d);
  Rational lc = den_.leading_coeff();
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw DivisionByZero();
  return *this *= RatFunc(o.den_, o.num_);
}

std::optional<HPoly> RatFunc::as_hpoly() const {
  if (has_v() || !den_.is_constant()) return std::nullopt;
  return num_.at_v(0);
}

RatFunc RatFunc::at_h(const Rational& h) const {
  BiPoly d = den_.at_h(h);
  if (d.is_zero()) throw DivisionByZero();
  return {num_.at_h(h), d};
}

Rational RatFunc::evaluate(const Rational& v, const Rational& h) const {
  Rational d = den_.evaluate(v, h);
  if (d == 0) throw DivisionByZero();
  return num_.evaluate(v, h) / d;
}

std::string RatFunc::to_string() const {
  const bool q_form = num_.all_v_even() && den_.all_v_even();
  std::string n = num_.to_string(q_form);
  if (den_.is_constant()) return n;
  std::string d = den_.to_string(q_form);
  if (num_.term_count() > 1) n = "(" + n + ")";
  if (den_.term_count() > 1 || d.find('*') != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

int order_at_q1(const RatFunc& f) {
  if (f.is_zero()) throw std::domain_error("zero has no order at q=1");
  return f.num().multiplicity_at_v1() - f.den().multiplicity_at_v1();
}

HPoly limit_q1(const RatFunc& f) {
  if (f.is_zero()) return {};
  const int order = order_at_q1(f);
  if (order < 0) throw PoleAtQ1(f.to_string(), order);
  if (order > 0) return {};
  // Reduced form: the denominator does not vanish at v = 1.
  HPoly n = f.num().at_v(1);
  HPoly d = f.den().at_v(1);
  auto [quot, rem] = divmod(n, d);
  if (!rem.is_zero()) throw NonPolynomialInH(f.to_string());
  return quot;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc acc = term();
    for (;;) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    for (;;) {
      if (eat('*')) {
        acc *= unary();
      } else if (eat('/')) {
        RatFunc d = unary();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = primary();
    if (!eat('^')) return base;
    long e = 0;
    if (eat('(')) {
      e = integer_literal(true);
      if (!eat(')')) fail("expected ')'");
    } else {
      e = integer_literal(true);
    }
    return pow(base, e);
  }

  static RatFunc pow(RatFunc base, long e) {
    if (e < 0) {
      if (base.is_zero()) throw DivisionByZero();
      base = RatFunc(1) / base;
      e = -e;
    }
    RatFunc r(1);
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  long integer_literal(bool allow_sign) {
    skip();
    bool neg = false;
    if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    long v = std::stol(std::string(s_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }

  RatFunc primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Rational r;
      r.set_str(std::string(s_.substr(start, pos_ - start)), 10);
      return RatFunc(r);
    }
    ++pos_;
    switch (c) {
      case 'q': return RatFunc::q();
      case 'v': return RatFunc::v();
      case 'h': return RatFunc::h();
      default: --pos_; fail(std::string("unknown symbol '") + c + "'");
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text) { return Parser(text).parse(); }

}  // namespace hdeform
