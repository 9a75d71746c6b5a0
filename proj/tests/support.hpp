#pragma once

// Random generators for test data. Every generated type is valid by
// construction: ambient lattices are built first and the matrices are read
// off from symplectic bases of the restricted forms.

#include "avt/avt.hpp"
#include "avt/coset_oracle.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace avt::testing {

using Rng = std::mt19937_64;

inline long long uniform(Rng &rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline IntMatrix random_matrix(Rng &rng, std::size_t r, std::size_t c, long long lo, long long hi) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

/// Product of elementary row operations; determinant +-1.
inline IntMatrix random_unimodular(Rng &rng, std::size_t n, int steps = 8) {
  IntMatrix u = IntMatrix::identity(n);
  if (n == 0) return u;
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(n) - 1));
    const auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(n) - 1));
    if (i == j) {
      if (uniform(rng, 0, 3) == 0)
        for (std::size_t c = 0; c < n; ++c) u(i, c) = -u(i, c);
      continue;
    }
    const long long k = uniform(rng, -2, 2);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
  }
  return u;
}

/// Divisor chain of length n with small entries.
inline PolarizationType random_type(Rng &rng, std::size_t n, long long max_step = 3) {
  std::vector<Integer> d;
  Integer cur = 1;
  for (std::size_t i = 0; i < n; ++i) {
    cur *= uniform(rng, 1, max_step);
    d.push_back(cur);
  }
  return PolarizationType(std::move(d));
}

inline std::uint64_t seed(Rng &rng) { return rng(); }

/// Symplectic type and coordinate change of an overlattice of Z^k on which
/// the form is still integral. The returned matrix expresses Z^k in a
/// symplectic basis of the overlattice.
struct Overlattice {
  PolarizationType type;
  IntMatrix matrix;
};

inline std::optional<Overlattice> overlattice(const Lattice &l, const IntMatrix &form) {
  const RatMatrix b = l.basis();
  const RatMatrix restricted = b.transpose() * to_rational(form) * b;
  if (!is_integral(restricted)) return std::nullopt;
  const auto nf = alternating_type(to_integer(restricted));
  return Overlattice{nf.type, to_integer(rat_inverse(b * to_rational(nf.basis)))};
}

/// Vector u with gram(d) * u == 0 mod k and content prime to k, or nothing.
inline std::optional<IntVector> torsion_vector(Rng &rng, const PolarizationType &d,
                                               const Integer &k) {
  const std::size_t n = d.dim();
  for (int attempt = 0; attempt < 20; ++attempt) {
    IntVector u(2 * n);
    Integer content = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Integer step = k / gcd(k, d[i]);
      u[i] = step * uniform(rng, -2, 2);
      u[i + n] = step * uniform(rng, -2, 2);
      content = gcd(content, gcd(u[i], u[i + n]));
    }
    if (n > 0 && gcd(content, k) == 1) return u;
  }
  return std::nullopt;
}

inline RatVector scaled(const IntVector &u, const Integer &k) {
  RatVector v;
  for (const auto &x : u) v.emplace_back(x, k);
  return v;
}

inline Lattice extend(const Lattice &l, const RatVector &v) {
  RatMatrix col(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) col(i, 0) = v[i];
  return sum(l, Lattice::from_generators(col));
}

inline std::vector<Integer> divisors_of(const Integer &n) {
  std::vector<Integer> out;
  for (Integer k = 1; k <= n; ++k)
    if (n % k == 0) out.push_back(k);
  return out;
}

/// Valid embedding type with prescribed D and D'. The kernel is generated
/// by up to `generators` diagonal elements (u/k, u'/k) with both halves of
/// exact order k.
inline EmbeddingType random_embedding(Rng &rng, const PolarizationType &d,
                                      const PolarizationType &dc, int generators = 2) {
  const std::size_t total = d.dim() + dc.dim();
  const IntMatrix form = direct_sum(gram(d), gram(dc));
  for (;;) {
    Lattice l = Lattice::standard(2 * total);
    if (d.dim() > 0 && dc.dim() > 0) {
      const Integer top = gcd(d[d.dim() - 1], dc[dc.dim() - 1]);
      const auto ks = divisors_of(top);
      const int count = static_cast<int>(uniform(rng, 0, generators));
      for (int g = 0; g < count; ++g) {
        const Integer k = ks[static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(ks.size()) - 1))];
        const auto u = torsion_vector(rng, d, k);
        const auto uc = torsion_vector(rng, dc, k);
        if (!u || !uc) continue;
        IntVector both = *u;
        both.insert(both.end(), uc->begin(), uc->end());
        l = extend(l, scaled(both, k));
      }
    }
    const auto ol = overlattice(l, form);
    if (!ol) continue;
    // a random symplectic basis of the ambient lattice
    const IntMatrix b = random_symplectic(ol->type, 6, seed(rng));
    EmbeddingType t{d, dc, ol->type, b * ol->matrix};
    if (check_embedding_type(t).valid) return t;
  }
}

/// Valid morphism type. With `kill` the isogeny P is built from an
/// overlattice of the kernel image so that P kills F; otherwise P is a
/// random isogeny that may or may not kill F.
struct MorphismShape {
  std::size_t n = 1, n_comp = 1, m_comp = 1;
};

inline MorphismType random_morphism(Rng &rng, const MorphismShape &shape, bool kill) {
  for (;;) {
    const PolarizationType d = random_type(rng, shape.n);
    const PolarizationType dc = random_type(rng, shape.n_comp);
    const EmbeddingType src = random_embedding(rng, d, dc);
    const IntMatrix dhat = gram(d);

    PolarizationType h;
    IntMatrix p;
    if (kill) {
      Lattice lam = kernel_image_in_x(src.matrix, shape.n);
      if (uniform(rng, 0, 2) == 0 && shape.n > 0) {
        const Integer k = uniform(rng, 2, 3);
        if (const auto v = torsion_vector(rng, d, k)) lam = extend(lam, scaled(*v, k));
      }
      const auto ol = overlattice(lam, dhat);
      if (!ol) continue;
      h = ol->type;
      p = ol->matrix;
    } else {
      Lattice lam = Lattice::standard(2 * shape.n);
      if (shape.n > 0) {
        const Integer k = uniform(rng, 1, 3);
        if (const auto v = torsion_vector(rng, d, k)) lam = extend(lam, scaled(*v, k));
      }
      const auto ol = overlattice(lam, dhat);
      if (!ol) continue;
      h = ol->type;
      p = ol->matrix;
    }
    p = random_symplectic(h, 6, seed(rng)) * p;
    const PolarizationType hc = random_type(rng, shape.m_comp);
    const EmbeddingType tgt = random_embedding(rng, h, hc);
    return MorphismType{d, dc, src.ambient, h, hc, tgt.ambient, src.matrix, tgt.matrix, p};
  }
}

/// Random witnesses of the full symplectic action on a morphism type.
inline MorphismWitness random_witness(Rng &rng, const MorphismType &t, std::size_t word) {
  return {random_symplectic(t.d, word, seed(rng)), random_symplectic(t.d_comp, word, seed(rng)),
          random_symplectic(t.e, word, seed(rng)), random_symplectic(t.h, word, seed(rng)),
          random_symplectic(t.h_comp, word, seed(rng)), random_symplectic(t.k, word, seed(rng))};
}

/// Valid isogeny type of dimension n: a diagonal core conjugated by random
/// symplectic matrices.
inline IsogenyType random_isogeny(Rng &rng, std::size_t n, std::size_t word = 6, long long max_step = 3) {
  const PolarizationType e = random_type(rng, n, max_step);
  const PolarizationType c = random_type(rng, n, max_step);
  std::vector<Integer> dv;
  IntMatrix m = IntMatrix::identity(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    dv.push_back(e[i] * c[i]);
    m(n + i, n + i) = c[i];
  }
  const PolarizationType d(std::move(dv));
  return apply_equivalence(IsogenyType{d, e, m},
                           IsogenyWitness{random_symplectic(d, word, seed(rng)),
                                          random_symplectic(e, word, seed(rng))});
}

/// Valid isogeny type whose target type is prescribed.
inline IsogenyType random_isogeny_onto(Rng &rng, const PolarizationType &target,
                                       std::size_t word = 6) {
  const std::size_t n = target.dim();
  const PolarizationType c = random_type(rng, n, 2);
  std::vector<Integer> dv;
  IntMatrix core = IntMatrix::identity(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    dv.push_back(target[i] * c[i]);
    core(n + i, n + i) = c[i];
  }
  const PolarizationType d(std::move(dv));
  return {d, target,
          random_symplectic(target, word, seed(rng)) * core * random_symplectic(d, word, seed(rng))};
}

inline ComplexMatrix random_siegel_matrix(Rng &rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto k = static_cast<Eigen::Index>(n);
  RealMatrix x(k, k), a(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      x(i, j) = u(rng);
      a(i, j) = u(rng);
    }
  const RealMatrix re = 0.5 * (x + x.transpose());
  const RealMatrix im = a * a.transpose() + 0.5 * RealMatrix::Identity(k, k);
  ComplexMatrix z(k, k);
  z.real() = re;
  z.imag() = im;
  return z;
}

inline SiegelPoint random_siegel(Rng &rng, std::size_t n) { return {random_siegel_matrix(rng, n)}; }

} // namespace avt::testing
