#pragma once

// Bounded enumeration of isogeny and embedding matrices.
//
// A matrix M with ^tM A M = G is built column by column: column j must satisfy
// the linear conditions c_i^T A c_j = G_ij against the columns already fixed,
// and coordinates are enumerated with interval pruning on those conditions.
// Results are returned in row-major lexicographic order, independent of the
// number of worker threads.

#include "avt/error.hpp"
#include "avt/matrix.hpp"
#include "avt/morphism_types.hpp"
#include "avt/symplectic.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <thread>
#include <vector>

namespace avt {

/// Optional prescribed entries, row-major over the N x N search matrix.
using EntryConstraints = std::vector<std::optional<std::int64_t>>;

namespace detail {

using SmallMatrix = std::vector<std::int64_t>; // row-major, N x N

inline std::int64_t to_small(const Integer &v) {
  if (abs(v) > Integer(1) << 40)
    throw Error(ErrorKind::OrderTooLarge, "search parameters exceed machine range");
  return static_cast<std::int64_t>(v);
}

inline SmallMatrix to_small(const IntMatrix &m) {
  SmallMatrix s;
  s.reserve(m.entries().size());
  for (const auto &v : m.entries()) s.push_back(to_small(v));
  return s;
}

class GramSearch {
public:
  GramSearch(const IntMatrix &target, const IntMatrix &ambient, std::int64_t bound,
             EntryConstraints fixed)
      : n_(target.rows()), g_(to_small(target)), a_(to_small(ambient)), bound_(bound),
        fixed_(std::move(fixed)) {
    if (fixed_.empty()) fixed_.assign(n_ * n_, std::nullopt);
  }

  /// Candidates for the first column, in enumeration order.
  std::vector<std::vector<std::int64_t>> first_columns() const {
    std::vector<std::vector<std::int64_t>> cols;
    std::vector<std::vector<std::int64_t>> prefix;
    columns_for(prefix, 0, [&](const std::vector<std::int64_t> &v) { cols.push_back(v); });
    return cols;
  }

  /// All completions whose first column is `first`; columns stored in order.
  void complete(const std::vector<std::int64_t> &first,
                std::vector<std::vector<std::vector<std::int64_t>>> &out) const {
    std::vector<std::vector<std::int64_t>> prefix{first};
    extend(prefix, out);
  }

  [[nodiscard]] std::size_t size() const noexcept { return n_; }

private:
  void extend(std::vector<std::vector<std::int64_t>> &prefix,
              std::vector<std::vector<std::vector<std::int64_t>>> &out) const {
    if (prefix.size() == n_) {
      out.push_back(prefix);
      return;
    }
    columns_for(prefix, prefix.size(), [&](const std::vector<std::int64_t> &v) {
      prefix.push_back(v);
      extend(prefix, out);
      prefix.pop_back();
    });
  }

  template <typename Emit>
  void columns_for(const std::vector<std::vector<std::int64_t>> &prefix, std::size_t j,
                   Emit &&emit) const {
    // conditions w_i . v = G_ij with w_i = A^T c_i, plus v^T A v = G_jj
    const std::size_t k = prefix.size();
    std::vector<std::vector<std::int64_t>> w(k, std::vector<std::int64_t>(n_, 0));
    std::vector<std::int64_t> rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t c = 0; c < n_; ++c)
        for (std::size_t r = 0; r < n_; ++r) w[i][c] += prefix[i][r] * a_[r * n_ + c];
      rhs[i] = g_[i * n_ + j];
    }
    // tail[i][t] = sum_{u >= t} |w_i[u]| * range_u
    std::vector<std::vector<std::int64_t>> tail(k, std::vector<std::int64_t>(n_ + 1, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t t = n_; t-- > 0;) {
        const auto &f = fixed_[t * n_ + j];
        const std::int64_t range = f ? std::llabs(*f) : bound_;
        tail[i][t] = tail[i][t + 1] + std::llabs(w[i][t]) * range;
      }
    std::vector<std::int64_t> v(n_, 0), partial(k, 0);
    enumerate(0, j, v, partial, w, rhs, tail, emit);
  }

  template <typename Emit>
  void enumerate(std::size_t t, std::size_t j, std::vector<std::int64_t> &v,
                 std::vector<std::int64_t> &partial,
                 const std::vector<std::vector<std::int64_t>> &w,
                 const std::vector<std::int64_t> &rhs,
                 const std::vector<std::vector<std::int64_t>> &tail, Emit &&emit) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (std::llabs(rhs[i] - partial[i]) > tail[i][t]) return;
    if (t == n_) {
      std::int64_t self = 0;
      for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) self += v[r] * a_[r * n_ + c] * v[c];
      if (self == g_[j * n_ + j]) emit(v);
      return;
    }
    const auto &f = fixed_[t * n_ + j];
    const std::int64_t lo = f ? *f : -bound_, hi = f ? *f : bound_;
    for (std::int64_t x = lo; x <= hi; ++x) {
      v[t] = x;
      for (std::size_t i = 0; i < w.size(); ++i) partial[i] += w[i][t] * x;
      enumerate(t + 1, j, v, partial, w, rhs, tail, emit);
      for (std::size_t i = 0; i < w.size(); ++i) partial[i] -= w[i][t] * x;
    }
    v[t] = 0;
  }

  std::size_t n_;
  SmallMatrix g_, a_;
  std::int64_t bound_;
  EntryConstraints fixed_;
};

/// All M with entries in the box (and the prescribed entries) such that
/// ^tM * ambient * M == target; row-major lexicographic order.
inline std::vector<IntMatrix> gram_solutions(const IntMatrix &target, const IntMatrix &ambient,
                                             const Integer &bound, EntryConstraints fixed,
                                             unsigned jobs) {
  if (bound < 0) throw Error(ErrorKind::Malformed, "negative search bound");
  const std::size_t n = target.rows();
  if (!fixed.empty() && fixed.size() != n * n)
    throw Error(ErrorKind::SizeMismatch, "constraint list does not match the matrix size");
  if (n == 0) return {IntMatrix()};
  const GramSearch search(target, ambient, to_small(bound), std::move(fixed));
  const auto firsts = search.first_columns();

  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(firsts.size())));
  std::vector<std::vector<std::vector<std::vector<std::int64_t>>>> parts(jobs);
  auto work = [&](unsigned id) {
    for (std::size_t c = id; c < firsts.size(); c += jobs) search.complete(firsts[c], parts[id]);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(work, id);
  }

  std::vector<SmallMatrix> flat;
  for (const auto &part : parts)
    for (const auto &cols : part) {
      SmallMatrix m(n * n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) m[r * n + c] = cols[c][r];
      flat.push_back(std::move(m));
    }
  std::sort(flat.begin(), flat.end());
  std::vector<IntMatrix> out;
  out.reserve(flat.size());
  for (const auto &m : flat)
    out.emplace_back(n, n, std::vector<Integer>(m.begin(), m.end()));
  return out;
}

} // namespace detail

/// Every M with entries in [-bound, bound] and ^tM E M = D. Empty when E does
/// not divide D, a necessary condition.
inline std::vector<IntMatrix> search_isogeny_matrices(const PolarizationType &d,
                                                      const PolarizationType &e,
                                                      const Integer &bound, unsigned jobs = 1) {
  if (!type_divides(e, d)) return {};
  return detail::gram_solutions(gram(d), gram(e), bound, {}, jobs);
}

/// Every M within the entry bound (and matching the prescribed entries) that
/// passes check_embedding_type.
inline std::vector<IntMatrix>
search_embedding_matrices(const PolarizationType &d, const PolarizationType &d_comp,
                          const PolarizationType &e, const Integer &bound,
                          const EntryConstraints &fixed = {}, unsigned jobs = 1) {
  if (e.dim() != d.dim() + d_comp.dim())
    throw Error(ErrorKind::SizeMismatch, "ambient type does not match");
  auto candidates =
      detail::gram_solutions(direct_sum(gram(d), gram(d_comp)), gram(e), bound, fixed, jobs);
  std::vector<IntMatrix> out;
  for (auto &m : candidates)
    if (check_embedding_type(d, d_comp, e, m).valid) out.push_back(std::move(m));
  return out;
}

/// Prescribes the first two columns (0,0,1,0) and (-k,0,0,1) of a 4x4
/// embedding matrix of an elliptic curve of degree k in a principally
/// polarized surface.
inline EntryConstraints elliptic_surface_columns(std::int64_t k) {
  EntryConstraints c(16);
  const std::int64_t col0[4] = {0, 0, 1, 0};
  const std::int64_t col1[4] = {-k, 0, 0, 1};
  for (std::size_t r = 0; r < 4; ++r) {
    c[r * 4 + 0] = col0[r];
    c[r * 4 + 1] = col1[r];
  }
  return c;
}

} // namespace avt
