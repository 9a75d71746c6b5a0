#pragma once

#include "avt/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace avt {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix. Zero rows or zero columns are legal.
template <typename T> class Matrix {
public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw Error(ErrorKind::SizeMismatch, "entry count does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
      if (r.size() != cols_)
        throw Error(ErrorKind::SizeMismatch, "ragged matrix literal");
      for (long long v : r) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, c); }
  static Matrix diagonal(const std::vector<T> &d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
  [[nodiscard]] const std::vector<T> &entries() const noexcept { return data_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [r0, r1) and columns [c0, c1).
  [[nodiscard]] Matrix block(std::size_t r0, std::size_t r1, std::size_t c0,
                             std::size_t c1) const {
    Matrix b(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix &b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  [[nodiscard]] std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const T &v) { return v == 0; });
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }

  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix &a, const Matrix &b) {
    require_same_shape(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
  }
  friend Matrix operator-(const Matrix &a, const Matrix &b) {
    require_same_shape(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
  }
  friend Matrix operator-(const Matrix &a) {
    Matrix c = a;
    for (auto &v : c.data_) v = -v;
    return c;
  }
  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_)
      throw Error(ErrorKind::SizeMismatch,
                  "product of " + a.shape() + " and " + b.shape());
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T &aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator*(const T &s, const Matrix &a) {
    Matrix c = a;
    for (auto &v : c.data_) v *= s;
    return c;
  }

  [[nodiscard]] std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  friend std::ostream &operator<<(std::ostream &os, const Matrix &m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

private:
  static void require_same_shape(const Matrix &a, const Matrix &b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorKind::SizeMismatch, a.shape() + " vs " + b.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Block-diagonal sum a (+) b.
template <typename T>
Matrix<T> direct_sum(const Matrix<T> &a, const Matrix<T> &b) {
  Matrix<T> c(a.rows() + b.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), a.cols(), b);
  return c;
}

/// [a | b]
template <typename T>
Matrix<T> hconcat(const Matrix<T> &a, const Matrix<T> &b) {
  if (a.rows() != b.rows() && a.cols() != 0 && b.cols() != 0)
    throw Error(ErrorKind::SizeMismatch, "hconcat of " + a.shape() + " and " + b.shape());
  const std::size_t r = a.cols() != 0 ? a.rows() : b.rows();
  Matrix<T> c(r, a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(0, a.cols(), b);
  return c;
}

/// Stack a over b.
template <typename T>
Matrix<T> vconcat(const Matrix<T> &a, const Matrix<T> &b) {
  if (a.cols() != b.cols() && a.rows() != 0 && b.rows() != 0)
    throw Error(ErrorKind::SizeMismatch, "vconcat of " + a.shape() + " and " + b.shape());
  const std::size_t c = a.rows() != 0 ? a.cols() : b.cols();
  Matrix<T> m(a.rows() + b.rows(), c);
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

inline RatMatrix to_rational(const IntMatrix &m) {
  std::vector<Rational> d;
  d.reserve(m.entries().size());
  for (const auto &v : m.entries()) d.emplace_back(v);
  return RatMatrix(m.rows(), m.cols(), std::move(d));
}

inline bool is_integral(const RatMatrix &m) {
  return std::all_of(m.entries().begin(), m.entries().end(), [](const Rational &v) {
    return boost::multiprecision::denominator(v) == 1;
  });
}

/// Throws NotIntegral if some entry has a denominator.
inline IntMatrix to_integer(const RatMatrix &m) {
  std::vector<Integer> d;
  d.reserve(m.entries().size());
  for (const auto &v : m.entries()) {
    if (boost::multiprecision::denominator(v) != 1)
      throw Error(ErrorKind::NotIntegral, "entry " + v.str() + " is not an integer");
    d.push_back(boost::multiprecision::numerator(v));
  }
  return IntMatrix(m.rows(), m.cols(), std::move(d));
}

inline Integer floor_div(const Integer &a, const Integer &b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Representative of a mod b in [0, |b|).
inline Integer mod_floor(const Integer &a, const Integer &b) {
  Integer r = a % b;
  if (r < 0) r += abs(b);
  return r;
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational &x) {
  const Integer &n = boost::multiprecision::numerator(x);
  const Integer &d = boost::multiprecision::denominator(x);
  return Rational(mod_floor(n, d), d);
}

/// g = gcd(a, b) >= 0 together with Bezout coefficients s*a + t*b = g.
inline void extended_gcd(const Integer &a, const Integer &b, Integer &g, Integer &s,
                         Integer &t) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}

inline Integer lcm(const Integer &a, const Integer &b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

} // namespace avt
