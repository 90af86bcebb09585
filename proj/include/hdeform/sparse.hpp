#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hdeform/scalar.hpp"

namespace hdeform {

/// Row-major sparse matrix; zero entries are never stored.
template <Scalar S>
class SparseMatrix {
 public:
  using Row = std::map<std::size_t, S>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace(i, S(1));
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const Row& row(std::size_t r) const { return rows_.at(r); }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  S get(std::size_t r, std::size_t c) const {
    const auto& row = rows_.at(r);
    auto it = row.find(c);
    return it == row.end() ? S{} : it->second;
  }

  void set(std::size_t r, std::size_t c, S value) {
    check(r, c);
    if (value.is_zero()) {
      rows_[r].erase(c);
    } else {
      rows_[r].insert_or_assign(c, std::move(value));
    }
  }

  void add(std::size_t r, std::size_t c, const S& value) {
    check(r, c);
    if (value.is_zero()) return;
    auto [it, inserted] = rows_[r].emplace(c, value);
    if (!inserted) {
      it->second = it->second + value;
      if (it->second.is_zero()) rows_[r].erase(it);
    }
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) f(r, c, v);
  }

  template <class F>
  auto map(F&& f) const -> SparseMatrix<std::decay_t<decltype(f(std::declval<const S&>()))>> {
    using T = std::decay_t<decltype(f(std::declval<const S&>()))>;
    SparseMatrix<T> out(rows(), cols());
    for_each([&](std::size_t r, std::size_t c, const S& v) { out.set(r, c, f(v)); });
    return out;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows());
    for_each([&](std::size_t r, std::size_t c, const S& v) { t.rows_[c].emplace(r, v); });
    return t;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
    SparseMatrix out(a.rows(), b.cols_);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Row& acc = out.rows_[i];
      for (const auto& [k, x] : a.rows_[i]) {
        for (const auto& [j, y] : b.rows_[k]) {
          auto [it, inserted] = acc.emplace(j, x * y);
          if (!inserted) it->second = it->second + x * y;
        }
      }
      std::erase_if(acc, [](const auto& e) { return e.second.is_zero(); });
    }
    return out;
  }

  friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) {
    a.require_same_shape(b);
    b.for_each([&](std::size_t r, std::size_t c, const S& v) { a.add(r, c, v); });
    return a;
  }

  friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) {
    a.require_same_shape(b);
    b.for_each([&](std::size_t r, std::size_t c, const S& v) { a.add(r, c, -v); });
    return a;
  }

  SparseMatrix scaled(const S& s) const {
    return map([&](const S& v) { return s * v; });
  }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.empty(); });
  }

  bool is_identity() const {
    if (rows() != cols_) return false;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (rows_[i].size() != 1) return false;
      auto it = rows_[i].begin();
      if (it->first != i || !(it->second == S(1))) return false;
    }
    return true;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_.size() || c >= cols_) throw std::out_of_range("sparse matrix index");
  }
  void require_same_shape(const SparseMatrix& b) const {
    if (rows() != b.rows() || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

template <Scalar S>
SparseMatrix<S> kron(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  SparseMatrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  a.for_each([&](std::size_t i, std::size_t k, const S& x) {
    b.for_each([&](std::size_t j, std::size_t l, const S& y) {
      out.set(i * b.rows() + j, k * b.cols() + l, x * y);
    });
  });
  return out;
}

/// Inverse of a square matrix with unit diagonal and zeros below it,
/// via the finite Neumann series of the nilpotent strict part.
template <Scalar S>
SparseMatrix<S> unitriangular_inverse(const SparseMatrix<S>& m) {
  const std::size_t n = m.rows();
  SparseMatrix<S> strict(n, n);
  m.for_each([&](std::size_t r, std::size_t c, const S& v) {
    if (c < r || (c == r && !(v == S(1)))) throw std::invalid_argument("matrix is not unit upper triangular");
    if (c > r) strict.set(r, c, -v);
  });
  SparseMatrix<S> result = SparseMatrix<S>::identity(n);
  SparseMatrix<S> power = SparseMatrix<S>::identity(n);
  for (std::size_t k = 1; k < n; ++k) {
    power = power * strict;
    if (power.is_zero()) break;
    result = result + power;
  }
  return result;
}

/// Reduced row echelon form with columns ranked by index (smaller index =
/// earlier pivot). Unique for a given column order. Zero rows are dropped.
template <FieldScalar S>
struct Echelon {
  std::vector<std::map<std::size_t, S>> rows;  // sorted by pivot
  std::vector<std::size_t> pivots;
};

template <FieldScalar S>
Echelon<S> rref(const std::vector<std::map<std::size_t, S>>& input) {
  using Row = std::map<std::size_t, S>;
  std::map<std::size_t, Row> basis;  // pivot column -> row with leading 1 there
  auto axpy = [](Row& target, const S& factor, const Row& src) {
    for (const auto& [c, v] : src) {
      auto [it, inserted] = target.emplace(c, -(factor * v));
      if (!inserted) {
        it->second = it->second - factor * v;
        if (it->second.is_zero()) target.erase(it);
      }
    }
  };
  for (const Row& original : input) {
    Row r;
    for (const auto& [c, v] : original)
      if (!v.is_zero()) r.emplace(c, v);
    // Eliminate existing pivots in increasing column order; basis rows only
    // have non-pivot columns past their pivot, so new fill lands to the right.
    for (auto it = r.begin(); it != r.end();) {
      auto b = basis.find(it->first);
      if (b == basis.end()) {
        ++it;
        continue;
      }
      const std::size_t col = it->first;
      S factor = it->second;
      axpy(r, factor, b->second);
      it = r.upper_bound(col);
    }
    if (r.empty()) continue;
    const std::size_t pivot = r.begin()->first;
    S inv = S(1) / r.begin()->second;
    for (auto& [c, v] : r) v = v * inv;
    for (auto& [p, brow] : basis) {
      auto hit = brow.find(pivot);
      if (hit == brow.end()) continue;
      S factor = hit->second;
      axpy(brow, factor, r);
    }
    basis.emplace(pivot, std::move(r));
  }
  Echelon<S> out;
  for (auto& [p, row] : basis) {
    out.pivots.push_back(p);
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// Inverse over a field by Gauss-Jordan; throws DivisionByZero if singular.
template <FieldScalar S>
SparseMatrix<S> inverse(const SparseMatrix<S>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
  std::vector<std::map<std::size_t, S>> aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = m.row(i);
    aug[i].emplace(n + i, S(1));
  }
  Echelon<S> e = rref(aug);
  if (e.rows.size() != n || e.pivots.back() >= n) throw DivisionByZero();
  SparseMatrix<S> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [c, v] : e.rows[i])
      if (c >= n) inv.set(i, c - n, v);
  return inv;
}

}  // namespace hdeform
