#pragma once

// Polarization types, their Gram matrices, the integral symplectic groups
// Sp(D, Z), and symplectic bases of integral alternating forms.
//
// Basis convention: a symplectic basis (l_1, ..., l_2n) of type D satisfies
// <l_i, l_{i+n}> = d_i, i.e. partners are n apart, not interleaved.

#include "avt/error.hpp"
#include "avt/matrix.hpp"
#include "avt/normal_form.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace avt {

/// Divisor chain d_1 | d_2 | ... | d_n of positive integers; n may be zero.
class PolarizationType {
public:
  PolarizationType() = default;
  explicit PolarizationType(std::vector<Integer> divisors) : d_(std::move(divisors)) {
    for (std::size_t i = 0; i < d_.size(); ++i) {
      if (d_[i] <= 0)
        throw Error(ErrorKind::InvalidPolarizationType, "divisors must be positive");
      if (i > 0 && d_[i] % d_[i - 1] != 0)
        throw Error(ErrorKind::InvalidPolarizationType, "divisors must form a chain");
    }
  }
  PolarizationType(std::initializer_list<long long> divisors)
      : PolarizationType(std::vector<Integer>(divisors.begin(), divisors.end())) {}

  static PolarizationType principal(std::size_t n) {
    return PolarizationType(std::vector<Integer>(n, Integer(1)));
  }

  [[nodiscard]] std::size_t dim() const noexcept { return d_.size(); }
  [[nodiscard]] const std::vector<Integer> &divisors() const noexcept { return d_; }
  [[nodiscard]] const Integer &operator[](std::size_t i) const { return d_[i]; }
  [[nodiscard]] Integer product() const {
    Integer p = 1;
    for (const auto &d : d_) p *= d;
    return p;
  }
  [[nodiscard]] bool is_principal() const {
    for (const auto &d : d_)
      if (d != 1) return false;
    return true;
  }
  [[nodiscard]] std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < d_.size(); ++i) s += (i ? "," : "") + d_[i].str();
    return s + ")";
  }

  friend bool operator==(const PolarizationType &, const PolarizationType &) = default;

private:
  std::vector<Integer> d_;
};

/// [[0, diag(d)], [-diag(d), 0]]
inline IntMatrix gram(const PolarizationType &d) {
  const std::size_t n = d.dim();
  IntMatrix g(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i + n) = d[i];
    g(i + n, i) = -d[i];
  }
  return g;
}

/// Checks a^T * G * a == G. A square matrix of the wrong size is a SizeMismatch.
inline bool is_symplectic(const IntMatrix &a, const PolarizationType &d) {
  if (!a.is_square() || a.rows() != 2 * d.dim())
    throw Error(ErrorKind::SizeMismatch,
                a.shape() + " matrix for a type of dimension " + std::to_string(d.dim()));
  const IntMatrix g = gram(d);
  return a.transpose() * g * a == g;
}

/// Termwise divisibility e_i | d_i.
inline bool type_divides(const PolarizationType &e, const PolarizationType &d) {
  if (e.dim() != d.dim())
    throw Error(ErrorKind::LengthMismatch, e.str() + " vs " + d.str());
  for (std::size_t i = 0; i < d.dim(); ++i)
    if (d[i] % e[i] != 0) return false;
  return true;
}

/// Generators of Sp(D, Z) used by random_symplectic. Each one maps the
/// standard basis to a symplectic basis of the same type:
///  - rotation(i): [[0,-1],[1,0]] acting on the plane (i, i+n);
///  - upper(i,j,s) / lower(i,j,s): unipotent [[1,S],[0,1]] / [[1,0],[S,1]] with
///    diag(d)*S symmetric, S the elementary symmetric pattern on (i, j);
///  - levi(i,j,s): diag(A, diag(d)^-1 A^-T diag(d)) with A = 1 + c*e_ij.
/// No claim is made that these generate all of Sp(D, Z) for non-principal D.
inline IntMatrix symplectic_generator(const PolarizationType &d, int kind, std::size_t i,
                                      std::size_t j, int sign) {
  const std::size_t n = d.dim();
  IntMatrix g = IntMatrix::identity(2 * n);
  switch (kind) {
  case 0: // rotation in the (i, i+n) plane
    g(i, i) = 0;
    g(i + n, i + n) = 0;
    g(i, i + n) = -sign;
    g(i + n, i) = sign;
    break;
  case 1:   // upper unipotent
  case 2: { // lower unipotent
    // S with diag(d) S symmetric: S_ii = 1, or S_ij = d_j/d_i, S_ji = 1 (i < j)
    const std::size_t off_r = kind == 1 ? 0 : n, off_c = kind == 1 ? n : 0;
    if (i == j) {
      g(off_r + i, off_c + i) = sign;
    } else {
      const std::size_t a = std::min(i, j), b = std::max(i, j);
      g(off_r + a, off_c + b) = sign * (d[b] / d[a]);
      g(off_r + b, off_c + a) = sign;
    }
    break;
  }
  default: { // levi block diag(A, B) with B = diag(d)^-1 A^-T diag(d)
    if (i == j) { // A = diag(-1 at i): B also -1 at i
      g(i, i) = -1;
      g(i + n, i + n) = -1;
      break;
    }
    // A = 1 + c e_ij; need d_j | c d_i for B integral
    Integer c = sign;
    if (d[i] % d[j] != 0) c *= d[j] / gcd(d[i], d[j]);
    g(i, j) = c;
    g(j + n, i + n) = -(c * d[i] / d[j]);
    break;
  }
  }
  return g;
}

/// Product of word_length random generators; deterministic for a given seed.
inline IntMatrix random_symplectic(const PolarizationType &d, std::size_t word_length,
                                   std::uint64_t seed) {
  const std::size_t n = d.dim();
  IntMatrix a = IntMatrix::identity(2 * n);
  if (n == 0) return a;
  std::mt19937_64 rng(seed);
  for (std::size_t w = 0; w < word_length; ++w) {
    const int kind = static_cast<int>(rng() % 4);
    const std::size_t i = rng() % n, j = rng() % n;
    const int sign = (rng() & 1U) ? 1 : -1;
    a = a * symplectic_generator(d, kind, i, j, sign);
  }
  return a;
}

struct AlternatingNormalForm {
  PolarizationType type;
  IntMatrix basis; ///< unimodular c with c^T * j * c == gram(type)
};

/// Frobenius normal form of a nondegenerate integral alternating form.
inline AlternatingNormalForm alternating_type(const IntMatrix &j) {
  if (!j.is_square()) throw Error(ErrorKind::NotAlternating, "form is not square");
  const std::size_t dim = j.rows();
  for (std::size_t a = 0; a < dim; ++a) {
    if (j(a, a) != 0) throw Error(ErrorKind::NotAlternating, "nonzero diagonal");
    for (std::size_t b = a + 1; b < dim; ++b)
      if (j(a, b) != -j(b, a)) throw Error(ErrorKind::NotAlternating, "not antisymmetric");
  }
  if (dim % 2 != 0) throw Error(ErrorKind::Degenerate, "odd dimensional alternating form");

  // Work on basis columns b (as a matrix c) with current Gram a = c^T j c.
  IntMatrix c = IntMatrix::identity(dim);
  IntMatrix a = j;
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer &k) {
    // b_dst += k * b_src, with the matching congruence on a
    if (k == 0) return;
    for (std::size_t r = 0; r < dim; ++r) c(r, dst) += k * c(r, src);
    for (std::size_t r = 0; r < dim; ++r) a(r, dst) += k * a(r, src);
    for (std::size_t r = 0; r < dim; ++r) a(dst, r) += k * a(src, r);
  };

  std::vector<std::size_t> rest(dim);
  for (std::size_t i = 0; i < dim; ++i) rest[i] = i;
  std::vector<std::size_t> firsts, seconds;
  std::vector<Integer> divs;

  while (!rest.empty()) {
    for (;;) {
      // smallest nonzero |a(p,q)| over the remaining indices
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t x : rest)
        for (std::size_t y : rest)
          if (a(x, y) != 0 && (!best || abs(a(x, y)) < abs(a(best->first, best->second))))
            best = {x, y};
      if (!best) throw Error(ErrorKind::Degenerate, "alternating form is degenerate");
      auto [p, q] = *best;
      if (a(p, q) < 0) std::swap(p, q);
      const Integer g = a(p, q);
      bool reduced = false;
      for (std::size_t k : rest) {
        if (k == p || k == q) continue;
        // <b_p, b_k - t b_q> = a(p,k) - t g
        if (a(p, k) != 0) {
          add_col(k, q, -floor_div(a(p, k), g));
          if (a(p, k) != 0) reduced = true;
        }
        // <b_q, b_k + t b_p> = a(q,k) - t g
        if (a(q, k) != 0) {
          add_col(k, p, floor_div(a(q, k), g));
          if (a(q, k) != 0) reduced = true;
        }
      }
      if (reduced) continue; // a smaller value appeared
      // g must divide the form on the orthogonal complement
      std::optional<std::size_t> bad;
      for (std::size_t x : rest) {
        if (x == p || x == q) continue;
        for (std::size_t y : rest)
          if (y != p && y != q && a(x, y) % g != 0) bad = x;
      }
      if (bad) {
        add_col(p, *bad, Integer(1));
        continue;
      }
      firsts.push_back(p);
      seconds.push_back(q);
      divs.push_back(g);
      std::erase(rest, p);
      std::erase(rest, q);
      break;
    }
  }

  const std::size_t n = dim / 2;
  IntMatrix out(dim, dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < dim; ++r) {
      out(r, i) = c(r, firsts[i]);
      out(r, i + n) = c(r, seconds[i]);
    }
  return {PolarizationType(std::move(divs)), std::move(out)};
}

} // namespace avt
