#include "cellsheaf/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cellsheaf {

std::size_t rank_dense(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  std::vector<mpz_class> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class scale = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      const mpz_class& den = m(i, j).get_den();
      if (den != 1) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const Rational& x = m(i, j);
      a[i * cols + j] = x.get_num() * (scale / x.get_den());
    }
  }

  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a[pivot * cols + j], a[r * cols + j]);
    }
    const mpz_class p = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const mpz_class f = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class v = p * a[i * cols + j] - f * a[r * cols + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i * cols + j] = std::move(v);
      }
      a[i * cols + c] = 0;
    }
    prev = p;
    ++r;
  }
  return r;
}

namespace {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// a - f * b over sorted entries.
SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -f * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second - f * b[j].second;
      if (sgn(v) != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  // Short rows first keeps fill-in low; each row is reduced against the pivots found so far.
  std::vector<SparseRow> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseRow r;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) r.emplace_back(j, m(i, j));
    if (!r.empty()) rows.push_back(std::move(r));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SparseRow& a, const SparseRow& b) { return a.size() < b.size(); });
  std::vector<SparseRow> pivot(m.cols());
  std::size_t r = 0;
  for (auto& row : rows) {
    while (!row.empty()) {
      std::size_t c = row.front().first;
      if (pivot[c].empty()) {
        Rational inv = 1 / row.front().second;
        for (auto& e : row) e.second *= inv;
        pivot[c] = std::move(row);
        ++r;
        break;
      }
      Rational f = row.front().second;
      row = axpy(row, f, pivot[c]);
    }
  }
  return r;
}

RowEchelon reduced_row_echelon(const Matrix& m) {
  RowEchelon out{m, {}};
  Matrix& a = out.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows() && a(pivot, c) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(r, j));
    }
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) {
        if (a(r, j) != 0) a(i, j) -= f * a(r, j);
      }
    }
    out.pivot_columns.push_back(c);
    ++r;
  }
  return out;
}

Matrix kernel_basis(const Matrix& m) {
  const RowEchelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  Matrix k(m.cols(), free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    k(free_cols[f], f) = 1;
    for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) {
      k(e.pivot_columns[r], f) = -e.reduced(r, free_cols[f]);
    }
  }
  return k;
}

Matrix column_space_basis(const Matrix& m) {
  const RowEchelon e = reduced_row_echelon(m);
  return m.select_cols(e.pivot_columns);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  const RowEchelon e = reduced_row_echelon(a.hconcat(b));
  const std::size_t n = a.cols();
  for (auto c : e.pivot_columns) {
    if (c >= n) return std::nullopt;
  }
  Matrix x(n, b.cols());
  for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) {
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivot_columns[r], j) = e.reduced(r, n + j);
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse: matrix not square");
  const RowEchelon e = reduced_row_echelon(m.hconcat(Matrix::identity(m.rows())));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r >= e.pivot_columns.size() || e.pivot_columns[r] != r) {
      throw std::domain_error("inverse: matrix is singular");
    }
  }
  return e.reduced.block(0, m.cols(), m.rows(), m.cols());
}

GradedDims::GradedDims(std::initializer_list<std::pair<const int, std::size_t>> entries) {
  for (const auto& [k, d] : entries) set(k, d);
}

GradedDims GradedDims::sequence(std::vector<std::size_t> dims, int lowest) {
  GradedDims g;
  for (std::size_t i = 0; i < dims.size(); ++i) g.set(lowest + static_cast<int>(i), dims[i]);
  return g;
}

std::size_t GradedDims::operator[](int degree) const {
  auto it = entries_.find(degree);
  return it == entries_.end() ? 0 : it->second;
}

void GradedDims::set(int degree, std::size_t dim) {
  if (dim == 0) {
    entries_.erase(degree);
  } else {
    entries_[degree] = dim;
  }
}

GradedDims GradedDims::shifted(int k) const {
  GradedDims g;
  for (const auto& [d, n] : entries_) g.set(d - k, n);
  return g;
}

long GradedDims::euler() const {
  long chi = 0;
  for (const auto& [k, d] : entries_) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(d);
  return chi;
}

std::string GradedDims::to_string() const {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [k, d] : entries_) {
    out << (first ? "" : ", ") << k << ":" << d;
    first = false;
  }
  out << "}";
  return out.str();
}

SpaceComplex::SpaceComplex(int lowest_degree, std::vector<std::size_t> dims, std::vector<Matrix> differentials)
    : lowest_(lowest_degree), dims_(std::move(dims)), differentials_(std::move(differentials)) {
  const std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
  if (differentials_.size() != expected) {
    throw SheafError("SpaceComplex: expected " + std::to_string(expected) + " differentials");
  }
  for (std::size_t i = 0; i < differentials_.size(); ++i) {
    if (differentials_[i].rows() != dims_[i + 1] || differentials_[i].cols() != dims_[i]) {
      throw SheafError("SpaceComplex: differential " + std::to_string(lowest_ + static_cast<int>(i)) +
                       " has the wrong shape");
    }
  }
}

std::size_t SpaceComplex::dim(int degree) const {
  if (degree < lowest_ || degree > highest_degree()) return 0;
  return dims_[static_cast<std::size_t>(degree - lowest_)];
}

Matrix SpaceComplex::differential(int degree) const {
  if (degree >= lowest_ && degree < highest_degree()) {
    return differentials_[static_cast<std::size_t>(degree - lowest_)];
  }
  return Matrix(dim(degree + 1), dim(degree));
}

void SpaceComplex::verify() const {
  for (int k = lowest_; k + 1 < highest_degree(); ++k) {
    if (!(differential(k + 1) * differential(k)).is_zero()) {
      throw SheafError("SpaceComplex: D^2 != 0 at degree " + std::to_string(k));
    }
  }
}

GradedDims cohomology(const SpaceComplex& c) {
  c.verify();
  GradedDims h;
  std::size_t incoming = 0;
  for (int k = c.lowest_degree(); k <= c.highest_degree(); ++k) {
    const std::size_t outgoing = rank(c.differential(k));
    h.set(k, c.dim(k) - outgoing - incoming);
    incoming = outgoing;
  }
  return h;
}

std::size_t induced_rank(const SpaceComplex& source, const SpaceComplex& target, int degree, const Matrix& g) {
  const Matrix cycles = kernel_basis(source.differential(degree));
  const Matrix boundaries = target.differential(degree - 1);
  if (g.rows() != target.dim(degree) || g.cols() != source.dim(degree)) {
    throw std::invalid_argument("induced_rank: chain map component has the wrong shape");
  }
  const Matrix image = g * cycles;
  return rank(image.hconcat(boundaries)) - rank(boundaries);
}

SpaceComplex total_complex(const DoubleComplex& grid) {
  const std::size_t np = grid.np();
  const std::size_t nq = grid.nq();
  if (np == 0 || nq == 0) return SpaceComplex();
  for (std::size_t p = 0; p + 1 < np; ++p) {
    for (std::size_t q = 0; q + 1 < nq; ++q) {
      const Matrix hv = grid.horizontal[p][q + 1] * grid.vertical[p][q];
      const Matrix vh = grid.vertical[p + 1][q] * grid.horizontal[p][q];
      if (!(hv == vh)) {
        throw SheafError("total_complex: square at (" + std::to_string(grid.p0 + static_cast<int>(p)) + "," +
                         std::to_string(grid.q0 + static_cast<int>(q)) + ") does not commute");
      }
    }
  }
  const int lowest = grid.p0 + grid.q0;
  const std::size_t ndeg = np + nq - 1;
  // offsets[n][p]: position of block (p, n - p) inside total degree n
  std::vector<std::vector<std::size_t>> offsets(ndeg, std::vector<std::size_t>(np, 0));
  std::vector<std::size_t> dims(ndeg, 0);
  for (std::size_t n = 0; n < ndeg; ++n) {
    for (std::size_t p = 0; p < np; ++p) {
      offsets[n][p] = dims[n];
      if (n >= p && n - p < nq) dims[n] += grid.dims[p][n - p];
    }
  }
  std::vector<Matrix> diffs;
  for (std::size_t n = 0; n + 1 < ndeg; ++n) {
    Matrix d(dims[n + 1], dims[n]);
    for (std::size_t p = 0; p < np; ++p) {
      if (n < p || n - p >= nq) continue;
      const std::size_t q = n - p;
      const std::size_t col = offsets[n][p];
      if (p + 1 < np) d.set_block(offsets[n + 1][p + 1], col, grid.horizontal[p][q]);
      if (q + 1 < nq) {
        Matrix v = grid.vertical[p][q];
        if ((grid.p0 + static_cast<int>(p)) % 2 != 0) v *= Rational(-1);
        d.set_block(offsets[n + 1][p], col, v);
      }
    }
    diffs.push_back(std::move(d));
  }
  SpaceComplex total(lowest, dims, std::move(diffs));
  total.verify();
  return total;
}

}  // namespace cellsheaf
