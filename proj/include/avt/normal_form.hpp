#pragma once

// Hermite and Smith normal forms, exact determinants and inverses over Z/Q.

#include "avt/error.hpp"
#include "avt/matrix.hpp"

#include <cstddef>
#include <optional>
#include <utility>

namespace avt {

struct HermiteForm {
  IntMatrix h; ///< row Hermite form
  IntMatrix u; ///< unimodular, h == u * m
};

struct SmithForm {
  IntMatrix s; ///< diagonal, s(i,i) | s(i+1,i+1), nonnegative
  IntMatrix u; ///< unimodular row transform
  IntMatrix v; ///< unimodular column transform, s == u * m * v
};

namespace detail {

// Replace rows (a, b) by (s*a + t*b, -(y/g)*a + (x/g)*b) where x, y are the
// entries being combined. The 2x2 transform has determinant 1.
inline void combine_rows(IntMatrix &m, std::size_t a, std::size_t b, const Integer &s,
                         const Integer &t, const Integer &p, const Integer &q) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer ra = m(a, j), rb = m(b, j);
    m(a, j) = s * ra + t * rb;
    m(b, j) = p * ra + q * rb;
  }
}

inline void combine_cols(IntMatrix &m, std::size_t a, std::size_t b, const Integer &s,
                         const Integer &t, const Integer &p, const Integer &q) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer ca = m(i, a), cb = m(i, b);
    m(i, a) = s * ca + t * cb;
    m(i, b) = p * ca + q * cb;
  }
}

inline void add_row_multiple(IntMatrix &m, std::size_t dst, std::size_t src,
                             const Integer &k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}

// Bezout coefficients that leave the pivot alone when it already divides b.
// Without this the row and column passes can trade the same entries forever.
inline void pivot_gcd(const Integer &a, const Integer &b, Integer &g, Integer &x, Integer &y) {
  if (b % a == 0) {
    g = a;
    x = 1;
    y = 0;
    return;
  }
  extended_gcd(a, b, g, x, y);
}

inline void negate_row(IntMatrix &m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

} // namespace detail

/// Row Hermite normal form: positive pivots, entries above each pivot
/// reduced into [0, pivot), zero rows at the bottom.
inline HermiteForm hnf(const IntMatrix &m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t j = 0; j < h.cols() && r < h.rows(); ++j) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, j) == 0) continue;
      Integer a = h(r, j), b = h(i, j), g, s, t;
      extended_gcd(a, b, g, s, t);
      Integer p = -b / g, q = a / g;
      detail::combine_rows(h, r, i, s, t, p, q);
      detail::combine_rows(u, r, i, s, t, p, q);
    }
    if (h(r, j) == 0) continue;
    if (h(r, j) < 0) {
      detail::negate_row(h, r);
      detail::negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer k = -floor_div(h(i, j), h(r, j));
      detail::add_row_multiple(h, i, r, k);
      detail::add_row_multiple(u, i, r, k);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

/// Smith normal form s = u * m * v.
inline SmithForm snf(const IntMatrix &m) {
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t k = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < k; ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < s.rows(); ++i)
      for (std::size_t j = t; j < s.cols(); ++j)
        if (s(i, j) != 0 &&
            (!best || abs(s(i, j)) < abs(s(best->first, best->second))))
          best = {i, j};
    if (!best) break;
    s.swap_rows(t, best->first);
    u.swap_rows(t, best->first);
    s.swap_cols(t, best->second);
    v.swap_cols(t, best->second);

    for (;;) {
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        Integer a = s(t, t), b = s(i, t), g, x, y;
        detail::pivot_gcd(a, b, g, x, y);
        Integer p = -b / g, q = a / g;
        detail::combine_rows(s, t, i, x, y, p, q);
        detail::combine_rows(u, t, i, x, y, p, q);
      }
      bool row_clean = true;
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        Integer a = s(t, t), b = s(t, j), g, x, y;
        detail::pivot_gcd(a, b, g, x, y);
        Integer p = -b / g, q = a / g;
        detail::combine_cols(s, t, j, x, y, p, q);
        detail::combine_cols(v, t, j, x, y, p, q);
        row_clean = false;
      }
      if (!row_clean) {
        bool col_clean = true;
        for (std::size_t i = t + 1; i < s.rows(); ++i) col_clean = col_clean && s(i, t) == 0;
        if (!col_clean) continue;
      }
      // pivot must divide the whole trailing block
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < s.rows() && !bad_row; ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      detail::add_row_multiple(s, t, *bad_row, Integer(1));
      detail::add_row_multiple(u, t, *bad_row, Integer(1));
    }
    if (s(t, t) < 0) {
      detail::negate_row(s, t);
      detail::negate_row(u, t);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

/// Fraction-free (Bareiss) determinant. The empty matrix has determinant 1.
inline Integer det(const IntMatrix &m) {
  if (!m.is_square()) throw Error(ErrorKind::NonSquare, "det of " + m.shape());
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && a(i, k) == 0) ++i;
      if (i == n) return 0;
      a.swap_rows(k, i);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline RatMatrix rat_inverse(const RatMatrix &m) {
  if (!m.is_square()) throw Error(ErrorKind::NonSquare, "inverse of " + m.shape());
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error(ErrorKind::Singular, "matrix is not invertible");
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    const Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline RatMatrix rat_inverse(const IntMatrix &m) { return rat_inverse(to_rational(m)); }

/// Inverse of a matrix with determinant +-1, computed in Z.
inline IntMatrix unimodular_inverse(const IntMatrix &m) {
  if (!m.is_square()) throw Error(ErrorKind::NonSquare, "inverse of " + m.shape());
  auto [h, u] = hnf(m);
  if (h != IntMatrix::identity(m.rows()))
    throw Error(ErrorKind::NotIntegral, "matrix is not unimodular");
  return u;
}

/// Columns form a Z-basis of {x in Z^cols : m x = 0}; the result is saturated.
inline IntMatrix kernel_basis(const IntMatrix &m) {
  auto [h, u] = hnf(m.transpose());
  std::size_t rank = 0;
  while (rank < h.rows() && !h.block(rank, rank + 1, 0, h.cols()).is_zero()) ++rank;
  return u.block(rank, u.rows(), 0, u.cols()).transpose();
}

/// Rank over Q.
inline std::size_t rank(const IntMatrix &m) {
  auto h = hnf(m).h;
  std::size_t r = 0;
  while (r < h.rows() && !h.block(r, r + 1, 0, h.cols()).is_zero()) ++r;
  return r;
}

} // namespace avt
