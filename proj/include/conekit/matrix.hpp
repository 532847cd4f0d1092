#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conekit/rational.hpp"

namespace conekit {

// Small dense row-major matrix. Used with Rat (exact spine of the library)
// and double (eigensolving and search heuristics only).
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, const T& init = T(0))
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, init) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative shape");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  // Column vector from entries.
  static Mat col(const std::vector<T>& v) {
    Mat m(static_cast<int>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) m.a_[i] = v[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  const std::vector<T>& data() const { return a_; }
  std::vector<T>& data() { return a_; }

  bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator+(const Mat& o) const {
    require_same_shape(o, "operator+");
    Mat r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
  }
  Mat operator-(const Mat& o) const {
    require_same_shape(o, "operator-");
    Mat r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
  }
  Mat operator*(const T& s) const {
    Mat r = *this;
    for (auto& x : r.a_) x *= s;
    return r;
  }
  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& aik = (*this)(i, k);
        if (aik == T(0)) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

 private:
  void require_same_shape(const Mat& o, const char* who) const {
    if (!same_shape(o)) throw std::invalid_argument(std::string("Mat: shape mismatch in ") + who);
  }

  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using RatMat = Mat<Rat>;
using DMat = Mat<double>;
using RatVec = std::vector<Rat>;
using DVec = std::vector<double>;

// Frobenius inner product (plain dot product for column vectors).
template <class T>
T frobenius(const Mat<T>& a, const Mat<T>& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("frobenius: shape mismatch");
  T s(0);
  for (size_t k = 0; k < a.data().size(); ++k) s += a.data()[k] * b.data()[k];
  return s;
}

DMat to_double(const RatMat& m);
RatMat to_rational(const DMat& m);  // exact (doubles are dyadic rationals)
DVec to_double(const RatVec& v);
RatVec to_rational(const DVec& v);

Rat max_abs_entry(const RatMat& m);
double max_abs_entry(const DMat& m);

// Coordinate order shared by the correlation polytope, the symmetric
// vectorization used for matrix-cone Caratheodory systems, and the
// circuit-face equations: diagonal entries (0,0)..(n-1,n-1) first, then
// off-diagonal pairs (i,j), i<j, in lexicographic order.
std::vector<std::pair<int, int>> sym_coords(int n);
inline int sym_dim(int n) { return n * (n + 1) / 2; }

// Upper-triangle read-out of a symmetric matrix in sym_coords order.
RatVec sym_vec(const RatMat& m);

}  // namespace conekit
