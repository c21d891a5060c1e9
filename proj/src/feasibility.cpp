#include "cellsheaf/feasibility.hpp"

#include <stdexcept>

namespace cellsheaf {

std::optional<std::vector<Rational>> find_nonnegative_solution(const Matrix& a, const std::vector<Rational>& b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw std::invalid_argument("find_nonnegative_solution: rhs length mismatch");

  // Tableau columns: n structural, m artificial, then rhs.
  const std::size_t width = n + m + 1;
  Matrix t(m + 1, width);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
    t(i, n + i) = 1;
    t(i, width - 1) = flip ? Rational(-b[i]) : b[i];
    basis[i] = n + i;
  }
  // Objective row: minimise the sum of artificials, expressed in nonbasic terms.
  for (std::size_t j = 0; j < width; ++j) {
    if (j >= n && j < n + m) continue;
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s -= t(i, j);
    t(m, j) = s;
  }

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (t(m, j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational ratio = t(i, width - 1) / t(i, enter);
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase one
    const Rational inv = 1 / t(leave, enter);
    for (std::size_t j = 0; j < width; ++j) t(leave, j) *= inv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      const Rational f = t(i, enter);
      for (std::size_t j = 0; j < width; ++j) {
        if (t(leave, j) != 0) t(i, j) -= f * t(leave, j);
      }
    }
    basis[leave] = enter;
  }

  if (t(m, width - 1) != 0) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = t(i, width - 1);
  }
  return x;
}

std::optional<std::vector<Rational>> find_strict_solution(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m == 0) return std::vector<Rational>(n);
  // a (y+ - y-) - s = 1 with y+, y-, s >= 0
  Matrix lp(m, 2 * n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      lp(i, j) = a(i, j);
      lp(i, n + j) = -a(i, j);
    }
    lp(i, 2 * n + i) = -1;
  }
  auto x = find_nonnegative_solution(lp, std::vector<Rational>(m, Rational(1)));
  if (!x) return std::nullopt;
  std::vector<Rational> y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = (*x)[j] - (*x)[n + j];
  return y;
}

}  // namespace cellsheaf
