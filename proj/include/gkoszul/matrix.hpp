#pragma once

// Dense exact matrices and the linear algebra every degree-wise computation
// rests on: reduced row echelon form with deterministic pivoting (first
// nonzero entry in column order), rank, kernel bases, quotient charts and
// maps induced on quotients.
//
// Everything is generic over the field; rank() additionally has a fast
// delayed-reduction path for F_p, which is where all the large eliminations
// happen.

#include <cassert>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gkoszul/errors.hpp"
#include "gkoszul/field.hpp"

namespace gkoszul {

template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix() : rows_(0), cols_(0) {}
  Matrix(const F& field, int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, field.zero()) {}

  static Matrix identity(const F& field, int n) {
    Matrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Elem& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Elem& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  bool is_zero(const F& field) const {
    for (const auto& x : a_)
      if (!field.is_zero(x)) return false;
    return true;
  }

  bool equals(const F& field, const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!field.eq(a_[i], other.a_[i])) return false;
    return true;
  }

  Matrix transposed() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.a_.resize(a_.size());
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t.a_[static_cast<std::size_t>(c) * rows_ + r] = at(r, c);
    return t;
  }

  std::vector<Elem> column(int c) const {
    std::vector<Elem> v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
  }

 private:
  int rows_, cols_;
  std::vector<Elem> a_;
};

template <class F>
Matrix<F> multiply(const F& field, const Matrix<F>& a, const Matrix<F>& b) {
  assert(a.cols() == b.rows());
  Matrix<F> c(field, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const auto& aik = a.at(i, k);
      if (field.is_zero(aik)) continue;
      for (int j = 0; j < b.cols(); ++j)
        c.at(i, j) = field.add(c.at(i, j), field.mul(aik, b.at(k, j)));
    }
  return c;
}

template <class F>
std::vector<typename F::Elem> apply(const F& field, const Matrix<F>& a,
                                    const std::vector<typename F::Elem>& v) {
  assert(static_cast<int>(v.size()) == a.cols());
  std::vector<typename F::Elem> out(a.rows(), field.zero());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!field.is_zero(a.at(i, j))) out[i] = field.add(out[i], field.mul(a.at(i, j), v[j]));
  return out;
}

// Columns of a next to columns of b.
template <class F>
Matrix<F> hstack(const F& field, const Matrix<F>& a, const Matrix<F>& b) {
  assert(a.rows() == b.rows() || a.cols() == 0 || b.cols() == 0);
  int rows = a.cols() ? a.rows() : b.rows();
  Matrix<F> c(field, rows, a.cols() + b.cols());
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
  }
  return c;
}

template <class F>
struct RrefResult {
  Matrix<F> matrix;
  std::vector<int> pivots;  // strictly increasing column indices
};

// Unique reduced row echelon form. Pivot choice: columns scanned left to
// right, first row with a nonzero entry wins.
template <class F>
RrefResult<F> rref(const F& field, Matrix<F> m) {
  std::vector<int> pivots;
  int pr = 0;
  for (int c = 0; c < m.cols() && pr < m.rows(); ++c) {
    int sel = -1;
    for (int r = pr; r < m.rows(); ++r)
      if (!field.is_zero(m.at(r, c))) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != pr)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(pr, j));
    auto piv_inv = field.inv(m.at(pr, c));
    for (int j = c; j < m.cols(); ++j) m.at(pr, j) = field.mul(m.at(pr, j), piv_inv);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == pr || field.is_zero(m.at(r, c))) continue;
      auto f = m.at(r, c);
      for (int j = c; j < m.cols(); ++j)
        m.at(r, j) = field.sub(m.at(r, j), field.mul(f, m.at(pr, j)));
    }
    pivots.push_back(c);
    ++pr;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
int rank(const F& field, const Matrix<F>& m) {
  return static_cast<int>(rref(field, m).pivots.size());
}

// Forward elimination over F_p with delayed reduction: rows are held as
// uint64 accumulators and only reduced when they serve as pivot rows.
// Products stay below 2^30 for p < 2^15..2^31 guarded at FpField
// construction, so row entries cannot overflow for any matrix that fits in
// memory.
inline int rank(const FpField& field, const Matrix<FpField>& m) {
  const std::uint64_t p = field.modulus();
  const int rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  std::vector<std::vector<std::uint64_t>> w(rows);
  for (int r = 0; r < rows; ++r) {
    w[r].resize(cols);
    for (int c = 0; c < cols; ++c) w[r][c] = m.at(r, c);
  }
  std::vector<std::uint32_t> piv(cols);
  int pr = 0;
  for (int c = 0; c < cols && pr < rows; ++c) {
    int sel = -1;
    for (int r = pr; r < rows; ++r)
      if (w[r][c] % p != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(w[sel], w[pr]);
    std::uint64_t inv = field.inv(w[pr][c] % p);
    for (int j = c; j < cols; ++j) piv[j] = static_cast<std::uint32_t>((w[pr][j] % p) * inv % p);
    for (int r = pr + 1; r < rows; ++r) {
      std::uint64_t cr = w[r][c] % p;
      if (cr == 0) continue;
      const std::uint32_t f = static_cast<std::uint32_t>(p - cr);
      std::uint64_t* dst = w[r].data();
      const std::uint32_t* src = piv.data();
      for (int j = c; j < cols; ++j) dst[j] += static_cast<std::uint64_t>(f) * src[j];
    }
    for (int j = c; j < cols; ++j) w[pr][j] = piv[j];
    ++pr;
  }
  return pr;
}

// Columns form a basis of ker(m). Column count = cols - rank.
template <class F>
Matrix<F> kernel_basis(const F& field, const Matrix<F>& m) {
  auto rr = rref(field, m);
  std::vector<int> free_cols;
  {
    std::size_t k = 0;
    for (int c = 0; c < m.cols(); ++c) {
      if (k < rr.pivots.size() && rr.pivots[k] == c)
        ++k;
      else
        free_cols.push_back(c);
    }
  }
  Matrix<F> kb(field, m.cols(), static_cast<int>(free_cols.size()));
  for (int j = 0; j < static_cast<int>(free_cols.size()); ++j) {
    int f = free_cols[j];
    kb.at(f, j) = field.one();
    for (int k = 0; k < static_cast<int>(rr.pivots.size()); ++k)
      kb.at(rr.pivots[k], j) = field.neg(rr.matrix.at(k, f));
  }
  return kb;
}

// Solves a * x = b column-wise; throws if some column of b is outside the
// column span of a.
template <class F>
Matrix<F> solve(const F& field, const Matrix<F>& a, const Matrix<F>& b) {
  assert(a.rows() == b.rows());
  auto rr = rref(field, hstack(field, a, b));
  Matrix<F> x(field, a.cols(), b.cols());
  for (int k = 0; k < static_cast<int>(rr.pivots.size()); ++k) {
    if (rr.pivots[k] >= a.cols())
      throw WellDefinednessViolation("solve: right-hand side not in column span");
    for (int j = 0; j < b.cols(); ++j) x.at(rr.pivots[k], j) = rr.matrix.at(k, a.cols() + j);
  }
  return x;
}

// Projection of an ambient coordinate space onto a chosen complement of a
// column span. The span is stored through the reduced row basis of the space
// it generates; the complement is spanned by the non-pivot coordinates, on
// which the projection acts as the identity.
template <class F>
class QuotientChart {
 public:
  using Elem = typename F::Elem;

  QuotientChart() : ambient_dim_(0) {}

  QuotientChart(const F& field, int ambient_dim, const Matrix<F>& span)
      : ambient_dim_(ambient_dim) {
    assert(span.cols() == 0 || span.rows() == ambient_dim);
    auto rr = rref(field, span.transposed());
    pivots_ = rr.pivots;
    rows_ = Matrix<F>(field, static_cast<int>(pivots_.size()), ambient_dim);
    for (int k = 0; k < rows_.rows(); ++k)
      for (int c = 0; c < ambient_dim; ++c) rows_.at(k, c) = rr.matrix.at(k, c);
    std::size_t k = 0;
    for (int c = 0; c < ambient_dim; ++c) {
      if (k < pivots_.size() && pivots_[k] == c)
        ++k;
      else
        free_.push_back(c);
    }
  }

  int ambient_dim() const { return ambient_dim_; }
  int span_rank() const { return static_cast<int>(pivots_.size()); }
  int dim() const { return static_cast<int>(free_.size()); }
  const std::vector<int>& free_coords() const { return free_; }
  const std::vector<int>& pivot_coords() const { return pivots_; }

  // Row basis of the span, in reduced row echelon form.
  const Matrix<F>& span_rows() const { return rows_; }

  // Normal form: v minus its span component, expressed on the complement
  // coordinates.
  std::vector<Elem> project(const F& field, const std::vector<Elem>& v) const {
    assert(static_cast<int>(v.size()) == ambient_dim_);
    std::vector<Elem> out(free_.size(), field.zero());
    for (std::size_t j = 0; j < free_.size(); ++j) out[j] = v[free_[j]];
    for (int k = 0; k < static_cast<int>(pivots_.size()); ++k) {
      const Elem& c = v[pivots_[k]];
      if (field.is_zero(c)) continue;
      for (std::size_t j = 0; j < free_.size(); ++j)
        out[j] = field.sub(out[j], field.mul(c, rows_.at(k, free_[j])));
    }
    return out;
  }

  // Applies the projection to every column of m.
  Matrix<F> project_columns(const F& field, const Matrix<F>& m) const {
    assert(m.rows() == ambient_dim_);
    Matrix<F> out(field, dim(), m.cols());
    for (int c = 0; c < m.cols(); ++c) {
      auto v = project(field, m.column(c));
      for (int r = 0; r < dim(); ++r) out.at(r, c) = v[r];
    }
    return out;
  }

  bool in_span(const F& field, const std::vector<Elem>& v) const {
    for (const auto& x : project(field, v))
      if (!field.is_zero(x)) return false;
    return true;
  }

  // Canonical section: quotient coordinates placed on the complement
  // coordinates of the ambient space.
  std::vector<Elem> lift(const F& field, const std::vector<Elem>& q) const {
    std::vector<Elem> v(ambient_dim_, field.zero());
    for (std::size_t j = 0; j < free_.size(); ++j) v[free_[j]] = q[j];
    return v;
  }

 private:
  int ambient_dim_;
  std::vector<int> pivots_;
  std::vector<int> free_;
  Matrix<F> rows_;
};

template <class F>
QuotientChart<F> quotient_structure(const F& field, int ambient_dim, const Matrix<F>& span) {
  return QuotientChart<F>(field, ambient_dim, span);
}

// Matrix of the map induced on quotient coordinates by f. Throws
// WellDefinednessViolation when f does not carry the source span into the
// destination span.
template <class F>
Matrix<F> induced_map_on_quotients(const F& field, const Matrix<F>& f,
                                   const QuotientChart<F>& src, const QuotientChart<F>& dst) {
  assert(f.cols() == src.ambient_dim());
  assert(f.rows() == dst.ambient_dim());
  const auto& basis = src.span_rows();
  for (int k = 0; k < basis.rows(); ++k) {
    std::vector<typename F::Elem> v(src.ambient_dim());
    for (int c = 0; c < src.ambient_dim(); ++c) v[c] = basis.at(k, c);
    if (!dst.in_span(field, apply(field, f, v)))
      throw WellDefinednessViolation("induced map does not preserve the span");
  }
  Matrix<F> out(field, dst.dim(), src.dim());
  for (int j = 0; j < src.dim(); ++j) {
    std::vector<typename F::Elem> e(src.dim(), field.zero());
    e[j] = field.one();
    auto img = dst.project(field, apply(field, f, src.lift(field, e)));
    for (int i = 0; i < dst.dim(); ++i) out.at(i, j) = img[i];
  }
  return out;
}

}  // namespace gkoszul
