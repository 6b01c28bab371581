#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ratseries {

// Dense rectangular matrix over an arbitrary star context. Storage only;
// arithmetic lives in the free functions below, parameterized by a context
// providing zero/one/add/mul/star/eq.
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, T fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Matrix transposed() const {
    Matrix r;
    r.rows_ = cols_;
    r.cols_ = rows_;
    r.data_.reserve(data_.size());
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) r.data_.push_back(at(i, j));
    return r;
  }

  Matrix block(std::size_t i0, std::size_t j0, std::size_t h,
               std::size_t w) const {
    Matrix r;
    r.rows_ = h;
    r.cols_ = w;
    r.data_.reserve(h * w);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < w; ++j) r.data_.push_back(at(i0 + i, j0 + j));
    return r;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

template <class Ctx>
Matrix<typename Ctx::value_type> mat_zero(const Ctx& ctx, std::size_t rows,
                                          std::size_t cols) {
  return Matrix<typename Ctx::value_type>(rows, cols, ctx.zero());
}

template <class Ctx>
Matrix<typename Ctx::value_type> mat_identity(const Ctx& ctx, std::size_t n) {
  auto r = mat_zero(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) r.at(i, i) = ctx.one();
  return r;
}

template <class Ctx, class T>
Matrix<T> mat_add(const Ctx& ctx, const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("mat_add: shape mismatch");
  Matrix<T> r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r.at(i, j) = ctx.add(a.at(i, j), b.at(i, j));
  return r;
}

template <class Ctx, class T>
Matrix<T> mat_mul(const Ctx& ctx, const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul: inner dims");
  Matrix<T> r = mat_zero(ctx, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j)
        r.at(i, j) =
            ctx.add(r.at(i, j), ctx.mul(a.at(i, k), b.at(k, j)));
  return r;
}

template <class Ctx, class T>
Matrix<T> mat_scale(const Ctx& ctx, const T& c, const Matrix<T>& a) {
  Matrix<T> r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r.at(i, j) = ctx.mul(c, a.at(i, j));
  return r;
}

template <class Ctx, class T>
bool mat_eq(const Ctx& ctx, const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!ctx.eq(a.at(i, j), b.at(i, j))) return false;
  return true;
}

namespace detail {

// Pastes [[A B];[C D]] back together.
template <class T>
Matrix<T> paste(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c,
                const Matrix<T>& d) {
  std::size_t n = a.rows(), m = d.rows();
  Matrix<T> r(n + m, n + m, a.rows() ? a.at(0, 0) : d.at(0, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < m; ++j) r.at(i, n + j) = b.at(i, j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) r.at(n + i, j) = c.at(i, j);
    for (std::size_t j = 0; j < m; ++j) r.at(n + i, n + j) = d.at(i, j);
  }
  return r;
}

}  // namespace detail

// Block star splitting at row/column `split` (0 < split < n):
//   alpha = (A + B D* C)*   beta  = alpha B D*
//   gamma = delta C A*      delta = (D + C A* B)*
template <class Ctx, class T>
Matrix<T> mat_star_split(const Ctx& ctx, const Matrix<T>& m,
                         std::size_t split) {
  std::size_t n = m.rows();
  if (n != m.cols()) throw DimensionMismatch("mat_star: not square");
  if (n == 0) return m;
  if (n == 1) {
    Matrix<T> r = m;
    r.at(0, 0) = ctx.star(m.at(0, 0));
    return r;
  }
  std::size_t k = split, l = n - split;
  Matrix<T> a = m.block(0, 0, k, k), b = m.block(0, k, k, l),
            c = m.block(k, 0, l, k), d = m.block(k, k, l, l);
  Matrix<T> astar = mat_star(ctx, a);
  Matrix<T> dstar = mat_star(ctx, d);
  Matrix<T> alpha = mat_star(
      ctx, mat_add(ctx, a, mat_mul(ctx, b, mat_mul(ctx, dstar, c))));
  Matrix<T> delta = mat_star(
      ctx, mat_add(ctx, d, mat_mul(ctx, c, mat_mul(ctx, astar, b))));
  Matrix<T> beta = mat_mul(ctx, alpha, mat_mul(ctx, b, dstar));
  Matrix<T> gamma = mat_mul(ctx, delta, mat_mul(ctx, c, astar));
  return detail::paste(alpha, beta, gamma, delta);
}

// Star via the defining recursion: split off the last row and column.
template <class Ctx, class T>
Matrix<T> mat_star(const Ctx& ctx, const Matrix<T>& m) {
  std::size_t n = m.rows();
  if (n <= 1) return mat_star_split(ctx, m, 0);
  return mat_star_split(ctx, m, n - 1);
}

// 0-1 matrix with a single 1 per row, encoding a function
// {0..domain-1} -> {0..codomain-1}.
class FunctionalMatrix {
 public:
  FunctionalMatrix() = default;
  FunctionalMatrix(std::size_t codomain, std::vector<std::size_t> map)
      : codomain_(codomain), map_(std::move(map)) {
    for (std::size_t v : map_)
      if (v >= codomain_) throw Error("functional matrix: index out of range");
  }

  std::size_t domain() const { return map_.size(); }
  std::size_t codomain() const { return codomain_; }
  std::size_t operator()(std::size_t i) const { return map_[i]; }
  const std::vector<std::size_t>& map() const { return map_; }

  // this ; other (apply this first)
  FunctionalMatrix compose(const FunctionalMatrix& other) const {
    if (codomain_ != other.domain())
      throw DimensionMismatch("functional compose: shape mismatch");
    std::vector<std::size_t> m(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) m[i] = other(map_[i]);
    return FunctionalMatrix(other.codomain(), m);
  }

  bool is_permutation() const {
    if (domain() != codomain_) return false;
    std::vector<bool> seen(codomain_, false);
    for (std::size_t v : map_) {
      if (seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }

  bool is_surjective() const {
    std::vector<bool> seen(codomain_, false);
    for (std::size_t v : map_) seen[v] = true;
    for (bool b : seen)
      if (!b) return false;
    return true;
  }

  template <class Ctx>
  Matrix<typename Ctx::value_type> to_matrix(const Ctx& ctx) const {
    auto r = mat_zero(ctx, domain(), codomain_);
    for (std::size_t i = 0; i < domain(); ++i) r.at(i, map_[i]) = ctx.one();
    return r;
  }

  template <class Ctx>
  Matrix<typename Ctx::value_type> to_matrix_transposed(const Ctx& ctx) const {
    auto r = mat_zero(ctx, codomain_, domain());
    for (std::size_t i = 0; i < domain(); ++i) r.at(map_[i], i) = ctx.one();
    return r;
  }

  friend bool operator==(const FunctionalMatrix& a,
                         const FunctionalMatrix& b) {
    return a.codomain_ == b.codomain_ && a.map_ == b.map_;
  }

 private:
  std::size_t codomain_ = 0;
  std::vector<std::size_t> map_;
};

// A || (B_1,...,B_m): rows are (row i of A) * B_i.
template <class Ctx, class T>
Matrix<T> row_couple(const Ctx& ctx, const Matrix<T>& a,
                     const std::vector<Matrix<T>>& bs) {
  if (bs.size() != a.rows())
    throw DimensionMismatch("row_couple: need one matrix per row");
  std::size_t p = bs.empty() ? 0 : bs[0].cols();
  for (const auto& b : bs)
    if (b.rows() != a.cols() || b.cols() != p)
      throw DimensionMismatch("row_couple: block shape mismatch");
  Matrix<T> r = mat_zero(ctx, a.rows(), p);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < p; ++j)
        r.at(i, j) =
            ctx.add(r.at(i, j), ctx.mul(a.at(i, k), bs[i].at(k, j)));
  return r;
}

// (B_1,...,B_n) || A: columns are B_j * (column j of A).
template <class Ctx, class T>
Matrix<T> col_couple(const Ctx& ctx, const std::vector<Matrix<T>>& bs,
                     const Matrix<T>& a) {
  if (bs.size() != a.cols())
    throw DimensionMismatch("col_couple: need one matrix per column");
  std::size_t p = bs.empty() ? 0 : bs[0].rows();
  for (const auto& b : bs)
    if (b.cols() != a.rows() || b.rows() != p)
      throw DimensionMismatch("col_couple: block shape mismatch");
  Matrix<T> r = mat_zero(ctx, p, a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t k = 0; k < a.rows(); ++k)
      for (std::size_t i = 0; i < p; ++i)
        r.at(i, j) =
            ctx.add(r.at(i, j), ctx.mul(bs[j].at(i, k), a.at(k, j)));
  return r;
}

}  // namespace ratseries
