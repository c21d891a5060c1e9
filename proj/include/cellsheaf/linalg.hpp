#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cellsheaf/matrix.hpp"

namespace cellsheaf {

/// Rank by sparse elimination over Q; the matrices met here are mostly zero.
std::size_t rank(const Matrix& m);
/// Rank by fraction-free (Bareiss) elimination after clearing denominators row by row.
std::size_t rank_dense(const Matrix& m);

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form over the rationals (Gauss-Jordan).
RowEchelon reduced_row_echelon(const Matrix& m);

/// Basis of the right null space, one vector per column.
Matrix kernel_basis(const Matrix& m);

/// A maximal linearly independent subset of the columns of m.
Matrix column_space_basis(const Matrix& m);

/// Some x with a*x == b, if one exists.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

/// Throws std::domain_error when m is singular or not square.
Matrix inverse(const Matrix& m);

/// Finitely supported integer-graded dimensions; zero entries are never stored.
class GradedDims {
 public:
  GradedDims() = default;
  GradedDims(std::initializer_list<std::pair<const int, std::size_t>> entries);

  /// dims[i] is the dimension in degree lowest + i.
  static GradedDims sequence(std::vector<std::size_t> dims, int lowest = 0);

  std::size_t operator[](int degree) const;
  void set(int degree, std::size_t dim);
  GradedDims shifted(int k) const;  // result[d] = (*this)[d + k]
  long euler() const;
  bool is_zero() const { return entries_.empty(); }
  const std::map<int, std::size_t>& entries() const { return entries_; }
  std::string to_string() const;

  friend bool operator==(const GradedDims&, const GradedDims&) = default;

 private:
  std::map<int, std::size_t> entries_;
};

/// Bounded cochain complex of finite-dimensional rational vector spaces.
class SpaceComplex {
 public:
  SpaceComplex() = default;
  /// differentials[i] maps degree lowest+i to lowest+i+1; there are dims.size()-1 of them.
  SpaceComplex(int lowest_degree, std::vector<std::size_t> dims, std::vector<Matrix> differentials);

  int lowest_degree() const { return lowest_; }
  int highest_degree() const { return lowest_ + static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int degree) const;
  /// Map from degree k to k+1 (a correctly shaped zero matrix outside the support).
  Matrix differential(int degree) const;

  /// Throws SheafError when shapes disagree or D_{k+1} D_k != 0.
  void verify() const;

 private:
  int lowest_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> differentials_;
};

/// dim H^k = dim ker D_k - rank D_{k-1}.
GradedDims cohomology(const SpaceComplex& c);

/// Rank of the map induced on H^k by a chain map with degree-k component g.
std::size_t induced_rank(const SpaceComplex& source, const SpaceComplex& target, int degree, const Matrix& g);

/// First-quadrant-style grid of spaces with horizontal maps (p,q)->(p+1,q) and
/// vertical maps (p,q)->(p,q+1). Squares are expected to commute.
struct DoubleComplex {
  int p0 = 0;
  int q0 = 0;
  std::vector<std::vector<std::size_t>> dims;            // [p][q]
  std::vector<std::vector<Matrix>> horizontal;           // [p][q], size np-1 in p
  std::vector<std::vector<Matrix>> vertical;             // [p][q], size nq-1 in q

  std::size_t np() const { return dims.size(); }
  std::size_t nq() const { return dims.empty() ? 0 : dims.front().size(); }
};

/// Totalisation with D = h + (-1)^p v. Verifies commuting squares and D^2 = 0.
SpaceComplex total_complex(const DoubleComplex& grid);

}  // namespace cellsheaf
