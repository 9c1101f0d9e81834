#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "galab/scalar.hpp"

namespace galab::detail {

template <FieldScalar S>
struct LinearSolve {
  std::size_t rank = 0;
  /// Present when the system is consistent.
  std::optional<std::vector<S>> solution;
  /// A nonzero kernel vector when rank < columns; first nonzero entry is 1.
  std::vector<S> kernel;
};

// Gauss-Jordan elimination over an exact field. a is rows x cols, rhs has
// `rows` entries (may be empty for a pure rank/kernel computation).
template <FieldScalar S>
LinearSolve<S> gauss_jordan(std::vector<std::vector<S>> a, std::vector<S> rhs = {}) {
  using T = ScalarTraits<S>;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  const bool with_rhs = !rhs.empty();

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && T::is_zero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    if (with_rhs) std::swap(rhs[p], rhs[r]);

    const S inv = T::one() / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    if (with_rhs) rhs[r] *= inv;

    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || T::is_zero(a[i][c])) continue;
      const S factor = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!T::is_zero(a[r][j])) a[i][j] -= factor * a[r][j];
      if (with_rhs) rhs[i] -= factor * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }

  LinearSolve<S> out;
  out.rank = r;

  if (r < cols) {
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    out.kernel.assign(cols, T::zero());
    out.kernel[free_col] = T::one();
    for (std::size_t i = 0; i < r; ++i) out.kernel[pivot_col[i]] = -a[i][free_col];
    std::size_t first = 0;
    while (T::is_zero(out.kernel[first])) ++first;
    const S scale = T::one() / out.kernel[first];
    for (auto& v : out.kernel) v *= scale;
  }

  if (with_rhs) {
    bool consistent = true;
    for (std::size_t i = r; i < rows; ++i)
      if (!T::is_zero(rhs[i])) consistent = false;
    if (consistent) {
      std::vector<S> x(cols, T::zero());
      for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
      out.solution = std::move(x);
    }
  }
  return out;
}

}  // namespace galab::detail
