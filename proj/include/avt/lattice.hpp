#pragma once

#include "avt/error.hpp"
#include "avt/matrix.hpp"
#include "avt/normal_form.hpp"

#include <cstddef>
#include <utility>

namespace avt {

/// A finitely generated subgroup of Q^k, stored as (1/den) * rows with the
/// integer row matrix in Hermite form and den the least common denominator.
/// Equal lattices therefore have identical representations.
class Lattice {
public:
  Lattice() = default;

  /// Lattice spanned over Z by the columns of gens.
  static Lattice from_generators(const RatMatrix &gens) {
    Integer den = 1;
    for (const auto &e : gens.entries()) den = lcm(den, boost::multiprecision::denominator(e));
    IntMatrix rows(gens.cols(), gens.rows());
    for (std::size_t i = 0; i < gens.rows(); ++i)
      for (std::size_t j = 0; j < gens.cols(); ++j) {
        const Rational &e = gens(i, j);
        rows(j, i) = boost::multiprecision::numerator(e) * (den / boost::multiprecision::denominator(e));
      }
    return Lattice(gens.rows(), std::move(den), rows);
  }
  static Lattice from_generators(const IntMatrix &gens) {
    return Lattice(gens.rows(), Integer(1), gens.transpose());
  }
  /// Z^k.
  static Lattice standard(std::size_t k) {
    return Lattice(k, Integer(1), IntMatrix::identity(k));
  }

  [[nodiscard]] std::size_t ambient_dim() const noexcept { return ambient_; }
  [[nodiscard]] std::size_t rank() const noexcept { return rows_.rows(); }
  [[nodiscard]] const Integer &denominator() const noexcept { return den_; }
  /// Generators as rows, scaled by denominator().
  [[nodiscard]] const IntMatrix &scaled_rows() const noexcept { return rows_; }

  /// Basis as the columns of a rational matrix.
  [[nodiscard]] RatMatrix basis() const {
    RatMatrix b(ambient_, rows_.rows());
    for (std::size_t i = 0; i < rows_.rows(); ++i)
      for (std::size_t j = 0; j < ambient_; ++j) b(j, i) = Rational(rows_(i, j), den_);
    return b;
  }

  [[nodiscard]] bool contains(const RatVector &x) const {
    if (x.size() != ambient_) throw Error(ErrorKind::SizeMismatch, "vector length");
    RatMatrix col(ambient_, 1);
    for (std::size_t i = 0; i < ambient_; ++i) col(i, 0) = x[i];
    return sum(*this, from_generators(col)) == *this;
  }
  [[nodiscard]] bool contains(const Lattice &other) const {
    return sum(*this, other) == *this;
  }

  friend Lattice sum(const Lattice &a, const Lattice &b) {
    if (a.ambient_ != b.ambient_) throw Error(ErrorKind::SizeMismatch, "lattice ambient dims");
    Integer den = lcm(a.den_, b.den_);
    IntMatrix stacked = vconcat(Integer(den / a.den_) * a.rows_, Integer(den / b.den_) * b.rows_);
    if (stacked.cols() != a.ambient_) stacked = IntMatrix(0, a.ambient_);
    return Lattice(a.ambient_, std::move(den), stacked);
  }

  friend bool operator==(const Lattice &, const Lattice &) = default;

private:
  Lattice(std::size_t ambient, Integer den, const IntMatrix &rows)
      : ambient_(ambient), den_(std::move(den)) {
    IntMatrix h = hnf(rows).h;
    std::size_t r = 0;
    while (r < h.rows() && !h.block(r, r + 1, 0, h.cols()).is_zero()) ++r;
    rows_ = h.block(0, r, 0, ambient_);
    Integer g = den_;
    for (const auto &e : rows_.entries()) g = gcd(g, e);
    if (rows_.rows() == 0) g = den_;
    if (g != 1) {
      den_ /= g;
      for (std::size_t i = 0; i < rows_.rows(); ++i)
        for (std::size_t j = 0; j < ambient_; ++j) rows_(i, j) /= g;
    }
  }

  std::size_t ambient_ = 0;
  Integer den_ = 1;
  IntMatrix rows_;
};

namespace detail {
inline void check_block(const Lattice &l, std::size_t first, std::size_t last) {
  if (first > last || last > l.ambient_dim())
    throw Error(ErrorKind::SizeMismatch, "coordinate block out of range");
}
} // namespace detail

/// l intersected with {v : v_i = 0 for i outside [first, last)}, kept in the
/// ambient space.
inline Lattice intersect_with_coordinate_block(const Lattice &l, std::size_t first,
                                               std::size_t last) {
  detail::check_block(l, first, last);
  const IntMatrix &b = l.scaled_rows();
  const std::size_t k = l.ambient_dim();
  IntMatrix outside(b.rows(), k - (last - first));
  for (std::size_t i = 0; i < b.rows(); ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (j < first || j >= last) outside(i, c++) = b(i, j);
  }
  // integer combinations x with x^T * outside = 0
  IntMatrix x = kernel_basis(outside.transpose()).transpose();
  IntMatrix rows = x * b;
  if (rows.rows() == 0) rows = IntMatrix(0, k);
  RatMatrix gens(k, rows.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) gens(j, i) = Rational(rows(i, j), l.denominator());
  return Lattice::from_generators(gens);
}

/// Image of l under the coordinate projection onto [first, last).
inline Lattice project_to_block(const Lattice &l, std::size_t first, std::size_t last) {
  detail::check_block(l, first, last);
  const IntMatrix &b = l.scaled_rows();
  RatMatrix gens(last - first, b.rows());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = first; j < last; ++j)
      gens(j - first, i) = Rational(b(i, j), l.denominator());
  return Lattice::from_generators(gens);
}

/// Z^{last-first} placed in coordinates [first, last) of Z^k.
inline Lattice coordinate_block_lattice(std::size_t k, std::size_t first, std::size_t last) {
  IntMatrix g(k, last - first);
  for (std::size_t i = first; i < last; ++i) g(i, i - first) = 1;
  return Lattice::from_generators(g);
}

} // namespace avt
