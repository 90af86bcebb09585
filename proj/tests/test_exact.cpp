#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hdeform/errors.hpp"
#include "hdeform/hpoly.hpp"
#include "hdeform/ratfunc.hpp"

using namespace hdeform;

namespace {

RatFunc P(const char* s) { return parse_ratfunc(s); }

// Random f = (v-1)^k * n(v,h) / d(v) with d(1) != 0, so order >= 0 and the
// value at v=1 is polynomial in h.
RatFunc random_regular(std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4), deg(0, 3), mult(0, 2);
  BiPoly n, d;
  for (int i = 0; i <= deg(rng); ++i)
    for (int j = 0; j <= 2; ++j) n += BiPoly::monomial(coeff(rng), i, j);
  do {
    d = BiPoly();
    for (int i = 0; i <= deg(rng); ++i) d += BiPoly::monomial(coeff(rng), i, 0);
  } while (d.is_zero() || d.at_v(1).is_zero());
  if (n.is_zero()) n = BiPoly(1);
  BiPoly vm1 = BiPoly::monomial(1, 1, 0) - BiPoly(1);
  for (int k = mult(rng); k > 0; --k) n = n * vm1;
  return RatFunc(n, d);
}

RatFunc random_any(std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3), deg(0, 2);
  BiPoly n, d;
  for (int i = 0; i <= deg(rng); ++i)
    for (int j = 0; j <= deg(rng); ++j) {
      n += BiPoly::monomial(coeff(rng), i, j);
      d += BiPoly::monomial(coeff(rng), j, i);
    }
  if (d.is_zero()) d = BiPoly(1);
  return RatFunc(n, d);
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
  CHECK(parse_rational("6/-4") == make_rational(-3, 2));
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  CHECK_THROWS_AS(parse_rational("1/0"), DivisionByZero);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("hpoly ring and euclid") {
  HPoly h = HPoly::h();
  HPoly a = (h + 1) * (h - 2);
  HPoly b = (h + 1) * (h + 3);
  CHECK(gcd(a, b) == h + 1);
  CHECK(exact_div(a, h + 1) == h - 2);
  CHECK_THROWS(exact_div(a, h + 5));
  CHECK((h * h - 2 * h).to_string() == "h^2 - 2*h");
  CHECK(a(Rational(2)) == 0);
  CHECK(HPoly().degree() == -1);
}

TEST_CASE("bipoly gcd over Q[v,h]") {
  BiPoly v = BiPoly::monomial(1, 1, 0);
  BiPoly h = BiPoly::monomial(1, 0, 1);
  BiPoly f = (v - h) * (v * h + 1);
  BiPoly g = (v - h) * (v + 2);
  CHECK(gcd(f, g) == v - h);
  CHECK(gcd(f * f, f * g) == gcd(f, g) * f.scaled(1 / f.leading_coeff()));
  CHECK(gcd(v * v * h, v * h * h) == v * h);
  CHECK(exact_div(f, v - h) == v * h + 1);
  CHECK((v * v - BiPoly(1)).multiplicity_at_v1() == 1);
  CHECK(((v - BiPoly(1)) * (v - BiPoly(1)) * h).multiplicity_at_v1() == 2);
}

TEST_CASE("ratfunc arithmetic examples") {
  CHECK((P("q-1") * P("h/(q-1)")) == P("h"));
  CHECK(P("q + q^-1") == RatFunc(BiPoly::monomial(1, 4, 0) + BiPoly(1), BiPoly::monomial(1, 2, 0)));
  CHECK((P("q + 1/q")).to_string() == "(q^2 + 1)/q");
  CHECK((P("q - q^-1") - P("(q-1)*(q+1)/q")).is_zero());
  CHECK_THROWS_AS(P("q") / RatFunc(), DivisionByZero);
  CHECK_THROWS_AS(P("1/(q-q)"), ParseError);
}

TEST_CASE("order at q=1") {
  CHECK(order_at_q1(P("(q-1)^2")) == 2);
  CHECK(order_at_q1(P("h/(q-1)")) == -1);
  CHECK(order_at_q1(P("(1-q^-4)/(q-1)")) == 0);
  CHECK(order_at_q1(P("v-1")) == 1);
  CHECK(order_at_q1(P("v+1")) == 0);
  CHECK_THROWS(order_at_q1(RatFunc()));
}

TEST_CASE("limit at q=1") {
  CHECK(limit_q1(P("(1-q^-4)/(q-1)")) == HPoly(4));
  CHECK(limit_q1(P("(q-q^-1)*h/(q-1)")) == 2 * HPoly::h());
  CHECK_THROWS_AS(limit_q1(P("1/(q-1)")), PoleAtQ1);
  CHECK_THROWS_AS(limit_q1(P("1/(h+1)")), NonPolynomialInH);
  // The corner coefficient of the symplectic contraction, N = 2n: the
  // q-dependence is (h^2/(q-1)) (q^-1 + 1)(1 - q^-N).
  for (int n = 1; n <= 4; ++n) {
    const int N = 2 * n;
    RatFunc corner = P("h^2/(q-1)") * (RatFunc::q(-1) + 1) * (RatFunc(1) - RatFunc::q(-N));
    CHECK(limit_q1(corner) == HPoly::monomial(2 * N, 2));
  }
  RatFunc corner_bd = P("h^2/(q-1)") * (RatFunc::q(-1) + 1) * (RatFunc(1) + RatFunc::q(-4));
  CHECK_THROWS_AS(limit_q1(corner_bd), PoleAtQ1);
}

TEST_CASE("printer emits q-form and parses back") {
  CHECK(P("v^2").to_string() == "q");
  CHECK(P("v^3").to_string() == "v^3");
  CHECK(P("q^(-2)").to_string() == "1/q^2");
  CHECK(P("h/(q-1)").to_string() == "h/(q - 1)");
  CHECK(P("-2/3*h*q").to_string() == "-2/3*q*h");
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    RatFunc f = random_any(rng);
    std::string s = f.to_string();
    CHECK(parse_ratfunc(s) == f);
    CHECK(parse_ratfunc(s).to_string() == s);
  }
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    RatFunc a = random_any(rng), b = random_any(rng), c = random_any(rng);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == RatFunc());
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("order is a valuation and limit a homomorphism") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    RatFunc f = random_any(rng), g = random_any(rng);
    if (f.is_zero() || g.is_zero()) continue;
    CHECK(order_at_q1(f * g) == order_at_q1(f) + order_at_q1(g));
    if (!(f + g).is_zero()) CHECK(order_at_q1(f + g) >= std::min(order_at_q1(f), order_at_q1(g)));
  }
  for (int trial = 0; trial < 60; ++trial) {
    RatFunc f = random_regular(rng), g = random_regular(rng);
    CHECK(limit_q1(f + g) == limit_q1(f) + limit_q1(g));
    CHECK(limit_q1(f * g) == limit_q1(f) * limit_q1(g));
  }
}

TEST_CASE("limit agrees with numeric evaluation next to v=1") {
  std::mt19937 rng(2024);
  const Rational delta = make_rational(1, 1000000);
  for (int trial = 0; trial < 100; ++trial) {
    RatFunc f = random_regular(rng);
    HPoly lim = limit_q1(f);
    for (Rational h : {make_rational(1, 3), Rational(2), Rational(-5)}) {
      const Rational exact = lim(h);
      const Rational above = f.evaluate(1 + delta, h), below = f.evaluate(1 - delta, h);
      // First-order Taylor: |f(1 +- d) - f(1)| <= (|f'(1)| + O(d)) d, with the
      // slope estimated by the central difference.
      const double slope = std::abs(Rational((above - below) / (2 * delta)).get_d());
      const double bound = (slope + 1.0) * delta.get_d() * 1.01;
      CHECK(std::abs(Rational(above - exact).get_d()) <= bound);
      CHECK(std::abs(Rational(below - exact).get_d()) <= bound);
    }
  }
}
