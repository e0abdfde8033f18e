#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "anomaly/matrix.hpp"

namespace anomaly {

inline Integer abs_of(const Integer& a) { return a < 0 ? Integer(-a) : a; }

enum class PivotPolicy {
  // Smallest nonzero |entry| in the active block, ties broken by lowest (row, col).
  min_abs,
  // First unit scanning the active block column by column; falls back to min_abs.
  first_unit_by_column,
};

struct SmithOptions {
  PivotPolicy pivot = PivotPolicy::min_abs;
  bool track_left = true;
  bool track_right = true;
  bool track_right_inverse = false;
};

template <class Int>
struct SmithForm {
  Matrix<Int> left;           // U
  Matrix<Int> diagonal;       // S = U * M * V
  Matrix<Int> right;          // V
  Matrix<Int> right_inverse;  // V^{-1}, when requested
  std::size_t rank = 0;

  Int factor(std::size_t i) const { return diagonal(i, i); }
};

namespace detail {

template <class Int>
std::optional<std::pair<std::size_t, std::size_t>> find_pivot(const Matrix<Int>& a, std::size_t k,
                                                               PivotPolicy policy) {
  if (policy == PivotPolicy::first_unit_by_column) {
    for (std::size_t j = k; j < a.cols(); ++j)
      for (std::size_t i = k; i < a.rows(); ++i) {
        const Int& x = a(i, j);
        if (x == 1 || x == -1) return std::pair{i, j};
      }
  }
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Int best_abs = 0;
  for (std::size_t i = k; i < a.rows(); ++i)
    for (std::size_t j = k; j < a.cols(); ++j) {
      const Int& x = a(i, j);
      if (x == 0) continue;
      Int ax = abs_of(x);
      if (!best || ax < best_abs) {
        best = std::pair{i, j};
        best_abs = ax;
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace detail

/// Smith normal form U*M*V = S with U, V unimodular, S diagonal, S_1 | S_2 | ..., S_i >= 0.
///
/// Integer reduction with explicit transforms. The result is fully determined by the input and
/// the pivot policy.
template <class Int>
SmithForm<Int> smith_normal_form(Matrix<Int> a, const SmithOptions& opt = {}) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm<Int> out;
  if (opt.track_left) out.left = Matrix<Int>::identity(m);
  if (opt.track_right) out.right = Matrix<Int>::identity(n);
  if (opt.track_right_inverse) out.right_inverse = Matrix<Int>::identity(n);

  auto row_op = [&](std::size_t dst, std::size_t src, const Int& c) {  // row[dst] += c*row[src]
    a.add_row_multiple(dst, src, c);
    if (opt.track_left) out.left.add_row_multiple(dst, src, c);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Int& c) {  // col[dst] += c*col[src]
    a.add_col_multiple(dst, src, c);
    if (opt.track_right) out.right.add_col_multiple(dst, src, c);
    if (opt.track_right_inverse) out.right_inverse.add_row_multiple(src, dst, -c);
  };
  auto swap_r = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (opt.track_left) out.left.swap_rows(x, y);
  };
  auto swap_c = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (opt.track_right) out.right.swap_cols(x, y);
    if (opt.track_right_inverse) out.right_inverse.swap_rows(x, y);
  };

  std::size_t k = 0;
  for (; k < std::min(m, n); ++k) {
    bool finished = false;
    while (true) {
      auto piv = detail::find_pivot(a, k, opt.pivot);
      if (!piv) {
        finished = true;
        break;
      }
      swap_r(k, piv->first);
      swap_c(k, piv->second);
      const Int p = a(k, k);

      bool column_clean = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (a(i, k) == 0) continue;
        Int q = a(i, k) / p;
        if (q != 0) row_op(i, k, -q);
        if (a(i, k) != 0) column_clean = false;
      }
      if (!column_clean) continue;

      // Column k is zero below the pivot, so these column operations only touch row k.
      bool row_clean = true;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a(k, j) == 0) continue;
        Int q = a(k, j) / p;
        if (q != 0) col_op(j, k, -q);
        if (a(k, j) != 0) row_clean = false;
      }
      if (!row_clean) continue;

      if (abs_of(p) != 1) {
        std::optional<std::size_t> bad;
        for (std::size_t i = k + 1; i < m && !bad; ++i)
          for (std::size_t j = k + 1; j < n; ++j)
            if (a(i, j) % p != 0) {
              bad = i;
              break;
            }
        if (bad) {
          row_op(k, *bad, Int(1));
          continue;
        }
      }
      if (p < 0) {
        a.negate_row(k);
        if (opt.track_left) out.left.negate_row(k);
      }
      break;
    }
    if (finished) break;
  }
  out.rank = k;
  out.diagonal = std::move(a);
  return out;
}

/// Convenience wrapper for the public operation: returns (U, S, V) over big integers.
struct SmithTriple {
  IntMatrix U, S, V;
};

inline SmithTriple smith_normal_form_triple(const IntMatrix& m) {
  auto f = smith_normal_form<Integer>(m);
  return {std::move(f.left), std::move(f.diagonal), std::move(f.right)};
}

}  // namespace anomaly
