#include "hdeform/rmatrix.hpp"

#include <stdexcept>

#include "hdeform/errors.hpp"

namespace hdeform {

std::string to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
  }
  return "?";
}

Family parse_family(std::string_view s) {
  if (s == "A") return Family::A;
  if (s == "B") return Family::B;
  if (s == "C") return Family::C;
  if (s == "D") return Family::D;
  throw ParseError("unknown family: " + std::string(s));
}

SeriesSpec SeriesSpec::A(int N) {
  if (N < 2) throw std::invalid_argument("A series needs N >= 2");
  return {Family::A, N, N};
}

SeriesSpec SeriesSpec::B(int n) {
  if (n < 1) throw std::invalid_argument("B series needs n >= 1");
  return {Family::B, n, 2 * n + 1};
}

SeriesSpec SeriesSpec::C(int n) {
  if (n < 1) throw std::invalid_argument("C series needs n >= 1");
  return {Family::C, n, 2 * n};
}

SeriesSpec SeriesSpec::D(int n) {
  if (n < 1) throw std::invalid_argument("D series needs n >= 1");
  return {Family::D, n, 2 * n};
}

SeriesSpec SeriesSpec::make(Family f, int rank_or_dim) {
  switch (f) {
    case Family::A: return A(rank_or_dim);
    case Family::B: return B(rank_or_dim);
    case Family::C: return C(rank_or_dim);
    case Family::D: return D(rank_or_dim);
  }
  throw std::invalid_argument("bad family");
}

int SeriesSpec::epsilon(int i) const {
  if (family_ == Family::C && i > dim_ / 2) return -1;
  return 1;
}

int SeriesSpec::twice_rho(int i) const {
  const int n = rank_;
  switch (family_) {
    case Family::B:
      // (n-1/2, ..., 1/2, 0, -1/2, ..., -n+1/2)
      if (i <= n) return 2 * (n - i) + 1;
      if (i == n + 1) return 0;
      return -(2 * (i - n - 2) + 1);
    case Family::C:
      // (n, ..., 1, -1, ..., -n)
      return i <= n ? 2 * (n + 1 - i) : -2 * (i - n);
    case Family::D:
      // (n-1, ..., 0, 0, ..., -n+1)
      return i <= n ? 2 * (n - i) : -2 * (i - n - 1);
    case Family::A:
      break;
  }
  throw std::logic_error("rho vector defined only for B, C, D");
}

RMatrix<RatFunc> build_r_A(int N, Orientation orientation) {
  if (N < 2) throw std::invalid_argument("A series needs N >= 2");
  const RatFunc q = RatFunc::q();
  const RatFunc skew = q - RatFunc::q(-1);
  RMatrix<RatFunc> R(N);
  for (int i = 1; i <= N; ++i) {
    for (int j = 1; j <= N; ++j) {
      R.add_unit(i, i, j, j, i == j ? q : RatFunc(1));
      const bool take = orientation == Orientation::Lower ? i > j : i < j;
      if (take) R.add_unit(i, j, j, i, skew);
    }
  }
  return R;
}

RMatrix<RatFunc> build_r_BCD(const SeriesSpec& spec) {
  if (spec.family() == Family::A) throw std::invalid_argument("build_r_BCD needs family B, C or D");
  const int N = spec.dim();
  const RatFunc q = RatFunc::q();
  const RatFunc qinv = RatFunc::q(-1);
  const RatFunc skew = q - qinv;
  RMatrix<RatFunc> R(N);
  for (int i = 1; i <= N; ++i) {
    const int ip = spec.mirror(i);
    if (i != ip) {
      R.add_unit(i, i, i, i, q);
      R.add_unit(ip, ip, i, i, qinv);
    } else {
      R.add_unit(i, i, i, i, RatFunc(1));  // middle index, B only
    }
    for (int j = 1; j <= N; ++j) {
      if (j != i && j != ip) R.add_unit(i, i, j, j, RatFunc(1));
    }
    for (int j = 1; j < i; ++j) {
      R.add_unit(i, j, j, i, skew);
      const int sign = spec.epsilon(i) * spec.epsilon(j);
      const RatFunc twist = RatFunc::v(spec.twice_rho(i) - spec.twice_rho(j));
      R.add_unit(i, j, ip, spec.mirror(j), -(skew * twist * RatFunc(sign)));
    }
  }
  return R;
}

RMatrix<RatFunc> build_r(const SeriesSpec& spec, Orientation orientation) {
  if (spec.family() == Family::A) return build_r_A(spec.dim(), orientation);
  return build_r_BCD(spec);
}

}  // namespace hdeform
