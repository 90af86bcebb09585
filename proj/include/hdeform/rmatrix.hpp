#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hdeform/ratfunc.hpp"
#include "hdeform/scalar.hpp"
#include "hdeform/sparse.hpp"

namespace hdeform {

enum class Family { A, B, C, D };

std::string to_string(Family f);
Family parse_family(std::string_view s);

/// Series data for the standard R-matrices. For A the rank is the
/// dimension N itself; for B N = 2n+1, for C and D N = 2n.
class SeriesSpec {
 public:
  static SeriesSpec A(int N);
  static SeriesSpec B(int n);
  static SeriesSpec C(int n);
  static SeriesSpec D(int n);
  static SeriesSpec make(Family f, int rank_or_dim);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  int dim() const { return dim_; }
  /// i' = N + 1 - i (1-based).
  int mirror(int i) const { return dim_ + 1 - i; }
  /// Sign data; all +1 except the upper half of the symplectic series.
  int epsilon(int i) const;
  /// Twice the rho vector entry, so half-integers for B stay integral.
  int twice_rho(int i) const;

 private:
  SeriesSpec(Family f, int rank, int dim) : family_(f), rank_(rank), dim_(dim) {}
  Family family_;
  int rank_;
  int dim_;
};

/// N^2 x N^2 matrix acting on V (x) V. The entry keyed by row (i,j) and
/// column (k,l) is the coefficient of e_ik (x) e_jl; indices are 1-based.
template <Scalar S>
class RMatrix {
 public:
  struct Entry {
    std::array<int, 4> index;  // i, j, k, l
    S value;
  };

  RMatrix() = default;
  explicit RMatrix(int N) : n_(N), m_(static_cast<std::size_t>(N * N), static_cast<std::size_t>(N * N)) {}
  RMatrix(int N, SparseMatrix<S> m) : n_(N), m_(std::move(m)) {
    if (m_.rows() != static_cast<std::size_t>(N * N) || m_.cols() != m_.rows())
      throw std::invalid_argument("R-matrix storage has wrong shape");
  }

  static RMatrix identity(int N) {
    return RMatrix(N, SparseMatrix<S>::identity(static_cast<std::size_t>(N * N)));
  }

  int dim() const { return n_; }
  const SparseMatrix<S>& matrix() const { return m_; }
  std::size_t nnz() const { return m_.nnz(); }

  std::size_t composite(int i, int j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_) throw std::out_of_range("R-matrix index out of range");
    return static_cast<std::size_t>((i - 1) * n_ + (j - 1));
  }
  std::pair<int, int> split(std::size_t c) const {
    return {static_cast<int>(c) / n_ + 1, static_cast<int>(c) % n_ + 1};
  }

  S at(int i, int j, int k, int l) const { return m_.get(composite(i, j), composite(k, l)); }
  void set(int i, int j, int k, int l, S v) { m_.set(composite(i, j), composite(k, l), std::move(v)); }
  void add(int i, int j, int k, int l, const S& v) { m_.add(composite(i, j), composite(k, l), v); }
  /// Adds c * (e_ik (x) e_jl).
  void add_unit(int i, int k, int j, int l, const S& c) { add(i, j, k, l, c); }

  /// Nonzero entries in lexicographic (i,j,k,l) order.
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    m_.for_each([&](std::size_t r, std::size_t c, const S& v) {
      auto [i, j] = split(r);
      auto [k, l] = split(c);
      out.push_back({{i, j, k, l}, v});
    });
    return out;
  }

  template <class F>
  auto map(F&& f) const {
    using T = std::decay_t<decltype(f(std::declval<const S&>()))>;
    return RMatrix<T>(n_, m_.map(std::forward<F>(f)));
  }

  friend bool operator==(const RMatrix& a, const RMatrix& b) { return a.n_ == b.n_ && a.m_ == b.m_; }

 private:
  int n_ = 0;
  SparseMatrix<S> m_;
};

enum class Orientation {
  Lower,  // (q - q^-1) sum_{i>j} e_ij (x) e_ji
  Upper,  // (q - q^-1) sum_{i<j} e_ij (x) e_ji
};

RMatrix<RatFunc> build_r_A(int N, Orientation orientation = Orientation::Lower);
RMatrix<RatFunc> build_r_BCD(const SeriesSpec& spec);
RMatrix<RatFunc> build_r(const SeriesSpec& spec, Orientation orientation = Orientation::Lower);

enum class Leg { L12, L13, L23 };

/// The flip P on V (x) V.
template <Scalar S>
SparseMatrix<S> flip(int N) {
  const auto n = static_cast<std::size_t>(N);
  SparseMatrix<S> p(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.set(i * n + j, j * n + i, S(1));
  return p;
}

/// R acting on two of three tensor factors, identity on the third.
template <Scalar S>
SparseMatrix<S> tensor_embed(const RMatrix<S>& R, Leg leg) {
  const auto n = static_cast<std::size_t>(R.dim());
  SparseMatrix<S> out(n * n * n, n * n * n);
  R.matrix().for_each([&](std::size_t r, std::size_t c, const S& v) {
    const std::size_t i = r / n, j = r % n, k = c / n, l = c % n;
    for (std::size_t m = 0; m < n; ++m) {
      switch (leg) {
        case Leg::L12: out.set((i * n + j) * n + m, (k * n + l) * n + m, v); break;
        case Leg::L13: out.set((i * n + m) * n + j, (k * n + m) * n + l, v); break;
        case Leg::L23: out.set((m * n + i) * n + j, (m * n + k) * n + l, v); break;
      }
    }
  });
  return out;
}

/// P R: entry ((i,j),(k,l)) of the result is entry ((j,i),(k,l)) of R.
template <Scalar S>
RMatrix<S> rhat(const RMatrix<S>& R) {
  RMatrix<S> out(R.dim());
  for (const auto& e : R.entries()) out.set(e.index[1], e.index[0], e.index[2], e.index[3], e.value);
  return out;
}

/// P R P (R_21).
template <Scalar S>
RMatrix<S> flip_conjugate(const RMatrix<S>& R) {
  RMatrix<S> out(R.dim());
  for (const auto& e : R.entries()) out.set(e.index[1], e.index[0], e.index[3], e.index[2], e.value);
  return out;
}

/// (m (x) m)^-1 R (m (x) m) given m and its inverse.
template <Scalar S>
RMatrix<S> similarity(const RMatrix<S>& R, const SparseMatrix<S>& m, const SparseMatrix<S>& m_inv) {
  SparseMatrix<S> G = kron(m, m);
  SparseMatrix<S> Ginv = kron(m_inv, m_inv);
  return RMatrix<S>(R.dim(), Ginv * R.matrix() * G);
}

template <FieldScalar S>
RMatrix<S> inverse(const RMatrix<S>& R) {
  return RMatrix<S>(R.dim(), inverse(R.matrix()));
}

/// One `R_ijkl = value` line per nonzero entry, lexicographic order.
template <Scalar S>
std::string to_text(const RMatrix<S>& R) {
  std::string out;
  for (const auto& e : R.entries()) {
    out += "R_";
    for (int x : e.index) out += std::to_string(x);
    out += " = " + e.value.to_string() + "\n";
  }
  return out;
}

}  // namespace hdeform
