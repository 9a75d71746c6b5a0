#pragma once

// Brute-force counterparts of the lattice-based checks, by explicit
// enumeration of the kernel F = M^{-1} Z^k / Z^k. Only usable for small |F|.

#include "avt/abelian_group.hpp"
#include "avt/matrix.hpp"

#include <cstddef>

namespace avt::oracle {

namespace detail {
inline bool integral_range(const RatVector &x, std::size_t first, std::size_t last) {
  for (std::size_t i = first; i < last; ++i)
    if (boost::multiprecision::denominator(x[i]) != 1) return false;
  return true;
}
inline bool integral(const RatVector &x) { return integral_range(x, 0, x.size()); }
} // namespace detail

/// True iff no nonzero element of F has an integral X'-block (saturation_x)
/// and, for the second flag, no nonzero element has an integral X-block.
struct SumOfEmbeddings {
  bool x = true;
  bool x_comp = true;
};

inline SumOfEmbeddings sum_of_embeddings(const IntMatrix &m, std::size_t n,
                                         std::size_t n_comp, const Integer &max_order) {
  const std::size_t k = 2 * (n + n_comp);
  SumOfEmbeddings v;
  for (const auto &x : kernel_cosets(m, max_order)) {
    if (detail::integral(x)) continue;
    if (detail::integral_range(x, 2 * n, k)) v.x = false;
    if (detail::integral_range(x, 0, 2 * n)) v.x_comp = false;
  }
  return v;
}

/// True iff P maps the X-block of every element of F into Z^2m.
inline bool kernel_killed(const IntMatrix &m, const IntMatrix &p, std::size_t n,
                          const Integer &max_order) {
  for (const auto &x : kernel_cosets(m, max_order)) {
    for (std::size_t r = 0; r < p.rows(); ++r) {
      Rational acc = 0;
      for (std::size_t c = 0; c < 2 * n; ++c) acc += Rational(p(r, c)) * x[c];
      if (boost::multiprecision::denominator(acc) != 1) return false;
    }
  }
  return true;
}

} // namespace avt::oracle
