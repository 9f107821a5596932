#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "twistor/exact/gauss.hpp"
#include "twistor/exact/rational.hpp"

namespace twistor::exact {

/// Rank over the field of F (Rational or GaussRational) by fraction-free
/// (Bareiss) elimination.  Empty input has rank 0.
template <class F>
std::size_t rank_of_matrix(std::vector<std::vector<F>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  for (const auto& row : m)
    if (row.size() != cols) throw std::invalid_argument("rank_of_matrix: ragged rows");

  F prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = F(0);
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

/// Incrementally built reduced row-echelon basis of a subspace of F^n.
/// Used for span membership tests without recomputing a full rank each time.
template <class F>
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Residual of v after eliminating against the basis; zero iff v is in the span.
  std::vector<F> reduce(std::vector<F> v) const {
    if (v.size() != dim_) throw std::invalid_argument("RowEchelon: dimension mismatch");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t c = pivots_[k];
      if (v[c].is_zero()) continue;
      const F f = v[c];
      for (std::size_t j = c; j < dim_; ++j) v[j] -= f * rows_[k][j];
    }
    return v;
  }

  bool contains(const std::vector<F>& v) const {
    for (const auto& x : reduce(v))
      if (!x.is_zero()) return false;
    return true;
  }

  /// Adds v to the basis; returns false if it was already in the span.
  bool insert(const std::vector<F>& v) {
    std::vector<F> r = reduce(v);
    std::size_t c = 0;
    while (c < dim_ && r[c].is_zero()) ++c;
    if (c == dim_) return false;
    const F inv = F(1) / r[c];
    for (std::size_t j = c; j < dim_; ++j) r[j] *= inv;
    // keep the basis fully reduced so reduce() needs one pass
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (rows_[k][c].is_zero()) continue;
      const F f = rows_[k][c];
      for (std::size_t j = c; j < dim_; ++j) rows_[k][j] -= f * r[j];
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < c) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), c);
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<F>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Rank of a list of integer vectors over Q.
inline std::size_t integer_rank(const std::vector<std::vector<int>>& vectors) {
  std::vector<std::vector<Rational>> m;
  m.reserve(vectors.size());
  for (const auto& v : vectors) m.emplace_back(v.begin(), v.end());
  return rank_of_matrix(std::move(m));
}

inline std::vector<Rational> to_rational(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace twistor::exact
