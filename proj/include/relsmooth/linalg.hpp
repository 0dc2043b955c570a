// Dense exact linear algebra over a field object: reduced row echelon
// form, rank, nullspaces, linear solving, and quotient vector spaces
// (the workhorse for all the finite-dimensional module computations).
//
// Everything is deterministic: pivots are chosen as the first nonzero
// entry scanning top to bottom, columns left to right.

#pragma once

#include <optional>
#include <vector>

#include "relsmooth/field.hpp"

namespace relsmooth {

template <ExactField F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix() : r_(0), c_(0) {}
  Matrix(size_t rows, size_t cols, Elem fill)
      : r_(rows), c_(cols), a_(rows * cols, fill) {}

  static Matrix zero(const F& f, size_t rows, size_t cols) {
    return Matrix(rows, cols, f.zero());
  }
  static Matrix identity(const F& f, size_t n) {
    Matrix m = zero(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }

  Elem& at(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Elem& at(size_t i, size_t j) const { return a_[i * c_ + j]; }

  std::vector<Elem> row(size_t i) const {
    return std::vector<Elem>(a_.begin() + static_cast<long>(i * c_),
                             a_.begin() + static_cast<long>((i + 1) * c_));
  }

  void set_row(size_t i, const std::vector<Elem>& v) {
    for (size_t j = 0; j < c_; ++j) at(i, j) = v[j];
  }

  void append_row(const std::vector<Elem>& v) {
    if (v.size() != c_ && r_ != 0)
      throw std::invalid_argument("append_row: width mismatch");
    if (r_ == 0 && c_ == 0) c_ = v.size();
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
  }

  bool eq(const F& f, const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (size_t k = 0; k < a_.size(); ++k)
      if (!f.eq(a_[k], o.a_[k])) return false;
    return true;
  }

 private:
  size_t r_, c_;
  std::vector<Elem> a_;
};

template <ExactField F>
Matrix<F> mat_mul(const F& f, const Matrix<F>& A, const Matrix<F>& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("mat_mul: shape");
  Matrix<F> C = Matrix<F>::zero(f, A.rows(), B.cols());
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t k = 0; k < A.cols(); ++k) {
      if (f.is_zero(A.at(i, k))) continue;
      for (size_t j = 0; j < B.cols(); ++j)
        C.at(i, j) = f.add(C.at(i, j), f.mul(A.at(i, k), B.at(k, j)));
    }
  return C;
}

template <ExactField F>
std::vector<typename F::Elem> mat_vec(const F& f, const Matrix<F>& A,
                                      const std::vector<typename F::Elem>& v) {
  if (A.cols() != v.size()) throw std::invalid_argument("mat_vec: shape");
  std::vector<typename F::Elem> r(A.rows(), f.zero());
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t j = 0; j < A.cols(); ++j)
      if (!f.is_zero(A.at(i, j)))
        r[i] = f.add(r[i], f.mul(A.at(i, j), v[j]));
  return r;
}

template <ExactField F>
Matrix<F> mat_add(const F& f, const Matrix<F>& A, const Matrix<F>& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("mat_add: shape");
  Matrix<F> C = A;
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t j = 0; j < A.cols(); ++j)
      C.at(i, j) = f.add(A.at(i, j), B.at(i, j));
  return C;
}

template <ExactField F>
Matrix<F> mat_scale(const F& f, const Matrix<F>& A,
                    const typename F::Elem& s) {
  Matrix<F> C = A;
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t j = 0; j < A.cols(); ++j) C.at(i, j) = f.mul(A.at(i, j), s);
  return C;
}

template <ExactField F>
Matrix<F> transpose(const Matrix<F>& A) {
  Matrix<F> T(A.cols(), A.rows(), A.rows() && A.cols() ? A.at(0, 0) : typename F::Elem{});
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t j = 0; j < A.cols(); ++j) T.at(j, i) = A.at(i, j);
  return T;
}

// In-place Gauss-Jordan; returns the pivot columns in ascending order.
template <ExactField F>
std::vector<size_t> rref(const F& f, Matrix<F>& M) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < M.cols() && row < M.rows(); ++col) {
    size_t sel = row;
    while (sel < M.rows() && f.is_zero(M.at(sel, col))) ++sel;
    if (sel == M.rows()) continue;
    if (sel != row)
      for (size_t j = 0; j < M.cols(); ++j) std::swap(M.at(sel, j), M.at(row, j));
    typename F::Elem inv = f.inv(M.at(row, col));
    for (size_t j = col; j < M.cols(); ++j)
      M.at(row, j) = f.mul(M.at(row, j), inv);
    for (size_t i = 0; i < M.rows(); ++i) {
      if (i == row || f.is_zero(M.at(i, col))) continue;
      typename F::Elem c = M.at(i, col);
      for (size_t j = col; j < M.cols(); ++j)
        M.at(i, j) = f.sub(M.at(i, j), f.mul(c, M.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <ExactField F>
size_t rank(const F& f, Matrix<F> M) {
  return rref(f, M).size();
}

// Basis of the right kernel {v : Mv = 0}, one row per free column, in
// ascending free-column order. Canonical given the input.
template <ExactField F>
Matrix<F> nullspace(const F& f, Matrix<F> M) {
  std::vector<size_t> pivots = rref(f, M);
  std::vector<bool> is_pivot(M.cols(), false);
  for (size_t p : pivots) is_pivot[p] = true;

  Matrix<F> K = Matrix<F>::zero(f, 0, M.cols());
  for (size_t j = 0; j < M.cols(); ++j) {
    if (is_pivot[j]) continue;
    std::vector<typename F::Elem> v(M.cols(), f.zero());
    v[j] = f.one();
    for (size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = f.neg(M.at(i, j));
    K.append_row(v);
  }
  return K;
}

// One solution of Ax = b (free variables set to zero), or nullopt.
template <ExactField F>
std::optional<std::vector<typename F::Elem>> solve(
    const F& f, const Matrix<F>& A, const std::vector<typename F::Elem>& b) {
  if (A.rows() != b.size()) throw std::invalid_argument("solve: shape");
  Matrix<F> aug = Matrix<F>::zero(f, A.rows(), A.cols() + 1);
  for (size_t i = 0; i < A.rows(); ++i) {
    for (size_t j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols()) = b[i];
  }
  std::vector<size_t> pivots = rref(f, aug);
  if (!pivots.empty() && pivots.back() == A.cols()) return std::nullopt;
  std::vector<typename F::Elem> x(A.cols(), f.zero());
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, A.cols());
  return x;
}

// ---------------------------------------------------------------------------
// Row space in canonical (RREF) form: membership tests and span growth.

template <ExactField F>
class Subspace {
 public:
  explicit Subspace(const F& f, size_t ambient)
      : f_(f), basis_(Matrix<F>::zero(f, 0, ambient)) {}

  Subspace(const F& f, Matrix<F> spanning_rows) : f_(f), basis_(spanning_rows) {
    rref(f_, basis_);
    shrink();
  }

  size_t ambient() const { return basis_.cols(); }
  size_t dim() const { return basis_.rows(); }
  const Matrix<F>& basis() const { return basis_; }

  // residue of v modulo the subspace (zero iff v is a member)
  std::vector<typename F::Elem> reduce(std::vector<typename F::Elem> v) const {
    for (size_t i = 0; i < basis_.rows(); ++i) {
      size_t p = pivot_col(i);
      if (f_.is_zero(v[p])) continue;
      typename F::Elem c = v[p];
      for (size_t j = p; j < basis_.cols(); ++j)
        v[j] = f_.sub(v[j], f_.mul(c, basis_.at(i, j)));
    }
    return v;
  }

  bool contains(const std::vector<typename F::Elem>& v) const {
    auto r = reduce(v);
    for (const auto& x : r)
      if (!f_.is_zero(x)) return false;
    return true;
  }

  // adds v to the span; returns true if the dimension grew
  bool grow(const std::vector<typename F::Elem>& v) {
    auto r = reduce(v);
    size_t lead = r.size();
    for (size_t j = 0; j < r.size(); ++j)
      if (!f_.is_zero(r[j])) {
        lead = j;
        break;
      }
    if (lead == r.size()) return false;
    typename F::Elem inv = f_.inv(r[lead]);
    for (auto& x : r) x = f_.mul(x, inv);
    basis_.append_row(r);
    // keep canonical: re-echelonize (cheap; rows are nearly in order)
    rref(f_, basis_);
    shrink();
    return true;
  }

 private:
  size_t pivot_col(size_t i) const {
    for (size_t j = 0; j < basis_.cols(); ++j)
      if (!f_.is_zero(basis_.at(i, j))) return j;
    throw std::logic_error("Subspace: zero basis row");
  }
  void shrink() {
    size_t r = basis_.rows();
    while (r > 0) {
      bool zero = true;
      for (size_t j = 0; j < basis_.cols(); ++j)
        if (!f_.is_zero(basis_.at(r - 1, j))) {
          zero = false;
          break;
        }
      if (!zero) break;
      --r;
    }
    if (r != basis_.rows()) {
      Matrix<F> b = Matrix<F>::zero(f_, r, basis_.cols());
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < basis_.cols(); ++j) b.at(i, j) = basis_.at(i, j);
      basis_ = std::move(b);
    }
  }

  F f_;
  Matrix<F> basis_;
};

// ---------------------------------------------------------------------------
// F^n modulo a subspace. Quotient coordinates are the non-pivot entries of
// the reduced vector; lift places coordinates back at the non-pivot slots.

template <ExactField F>
class QuotientSpace {
 public:
  QuotientSpace(const F& f, size_t ambient, Matrix<F> relations)
      : f_(f), sub_(f, std::move(relations)) {
    if (sub_.ambient() != ambient)
      throw std::invalid_argument("QuotientSpace: ambient mismatch");
    std::vector<bool> is_pivot(ambient, false);
    for (size_t i = 0; i < sub_.dim(); ++i) {
      for (size_t j = 0; j < ambient; ++j)
        if (!f_.is_zero(sub_.basis().at(i, j))) {
          is_pivot[j] = true;
          break;
        }
    }
    for (size_t j = 0; j < ambient; ++j)
      if (!is_pivot[j]) free_cols_.push_back(j);
  }

  size_t ambient() const { return sub_.ambient(); }
  size_t dim() const { return free_cols_.size(); }
  const Subspace<F>& relations() const { return sub_; }

  std::vector<typename F::Elem> project(
      const std::vector<typename F::Elem>& v) const {
    auto r = sub_.reduce(v);
    std::vector<typename F::Elem> q;
    q.reserve(free_cols_.size());
    for (size_t j : free_cols_) q.push_back(r[j]);
    return q;
  }

  std::vector<typename F::Elem> lift(
      const std::vector<typename F::Elem>& q) const {
    if (q.size() != free_cols_.size())
      throw std::invalid_argument("QuotientSpace::lift: size");
    std::vector<typename F::Elem> v(ambient(), f_.zero());
    for (size_t k = 0; k < free_cols_.size(); ++k) v[free_cols_[k]] = q[k];
    return v;
  }

  // matrix of the induced map on quotients, given a map of ambient spaces
  // (as a matrix acting on column vectors) that preserves the relations
  Matrix<F> induced(const Matrix<F>& amb_map,
                    const QuotientSpace& target) const {
    Matrix<F> M = Matrix<F>::zero(f_, target.dim(), dim());
    for (size_t k = 0; k < dim(); ++k) {
      std::vector<typename F::Elem> e(dim(), f_.zero());
      e[k] = f_.one();
      auto img = target.project(mat_vec(f_, amb_map, lift(e)));
      for (size_t i = 0; i < target.dim(); ++i) M.at(i, k) = img[i];
    }
    return M;
  }

 private:
  F f_;
  Subspace<F> sub_;
  std::vector<size_t> free_cols_;
};

}  // namespace relsmooth
