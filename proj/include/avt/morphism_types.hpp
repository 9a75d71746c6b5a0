#pragma once

// Types of isogenies, embeddings and morphisms of polarized abelian varieties
// relative to symplectic bases, with exact checkers and the action of the
// symplectic groups on them.
//
// Index conventions. A product X x X' carries coordinates (X-block, X'-block):
// the first 2n coordinates are the symplectic basis of X (partners n apart),
// the next 2n' those of X'. The ambient variety of dimension n+n' uses its own
// pairing i <-> i+n+n'. product_embedding_matrix() gives the index map
// between the two orderings.

#include "avt/abelian_group.hpp"
#include "avt/error.hpp"
#include "avt/lattice.hpp"
#include "avt/matrix.hpp"
#include "avt/normal_form.hpp"
#include "avt/symplectic.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace avt {

struct IsogenyType {
  PolarizationType source; ///< D, type of X
  PolarizationType target; ///< E, type of Y
  IntMatrix matrix;        ///< M : Z^2n -> Z^2n
  friend bool operator==(const IsogenyType &, const IsogenyType &) = default;
};

struct EmbeddingType {
  PolarizationType sub;        ///< D, type of X
  PolarizationType complement; ///< D', type of X'
  PolarizationType ambient;    ///< E, type of Y
  IntMatrix matrix;            ///< M : Z^2n x Z^2n' -> Z^2(n+n')
  friend bool operator==(const EmbeddingType &, const EmbeddingType &) = default;
};

/// delta = (D, D', E, H, H', K), tau = (M, N, P) for the square
///   X x X' --M--> V
///     | P(+)0     | Q
///   Y x Y' --N--> W
struct MorphismType {
  PolarizationType d, d_comp, e; ///< X, X', V
  PolarizationType h, h_comp, k; ///< Y, Y', W
  IntMatrix m, n, p;

  [[nodiscard]] EmbeddingType source_embedding() const { return {d, d_comp, e, m}; }
  [[nodiscard]] EmbeddingType target_embedding() const { return {h, h_comp, k, n}; }
  [[nodiscard]] IsogenyType isogeny() const { return {d, h, p}; }
  [[nodiscard]] std::vector<PolarizationType> delta() const { return {d, d_comp, e, h, h_comp, k}; }
  friend bool operator==(const MorphismType &, const MorphismType &) = default;
};

namespace failure {
inline constexpr const char *gram_equation = "gram_equation";
inline constexpr const char *gram_product = "gram_product";
inline constexpr const char *saturation_x = "saturation_x";
inline constexpr const char *saturation_xcomp = "saturation_xcomp";
inline constexpr const char *kernel_kill = "kernel_kill";
inline constexpr const char *induced_integrality = "induced_integrality";
inline constexpr const char *type_mismatch = "type_mismatch";
} // namespace failure

struct CheckReport {
  bool valid = false;
  std::vector<std::string> failures;
  std::optional<FiniteAbelianGroup> kernel;        ///< F = Coker M
  std::optional<FiniteAbelianGroup> target_kernel; ///< G = Coker N (morphisms)
  std::optional<int> det_sign;                     ///< sign of det M (isogenies)
  std::optional<IntMatrix> induced_matrix;         ///< Q = N (P (+) 0) M^-1
  /// Factorization P = p_bar * r with Coker r = F (morphisms, when P kills F)
  std::optional<std::pair<IntMatrix, IntMatrix>> factorization;

  [[nodiscard]] bool has_failure(const std::string &id) const {
    for (const auto &f : failures)
      if (f == id) return true;
    return false;
  }
};

/// Permutation matrix sending the product symplectic basis of X x X' to the
/// ambient ordering. With E = (D, D') concatenated it is a valid embedding
/// type with trivial kernel.
inline IntMatrix product_embedding_matrix(std::size_t n, std::size_t n_comp) {
  const std::size_t total = n + n_comp;
  IntMatrix m(2 * total, 2 * total);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
    m(total + i, n + i) = 1;
  }
  for (std::size_t i = 0; i < n_comp; ++i) {
    m(n + i, 2 * n + i) = 1;
    m(total + n + i, 2 * n + n_comp + i) = 1;
  }
  return m;
}

inline CheckReport check_isogeny_type(const PolarizationType &d, const PolarizationType &e,
                                      const IntMatrix &m) {
  if (d.dim() != e.dim())
    throw Error(ErrorKind::SizeMismatch, "types " + d.str() + " and " + e.str());
  if (!m.is_square() || m.rows() != 2 * d.dim())
    throw Error(ErrorKind::SizeMismatch, "isogeny matrix " + m.shape());
  CheckReport r;
  if (m.transpose() * gram(e) * m != gram(d)) r.failures.emplace_back(failure::gram_equation);
  if (!type_divides(e, d)) r.failures.emplace_back(failure::type_mismatch);
  const Integer dm = det(m);
  if (dm != 0) {
    r.det_sign = dm > 0 ? 1 : -1;
    r.kernel = cokernel(m);
  }
  r.valid = r.failures.empty();
  return r;
}

inline CheckReport check_isogeny_type(const IsogenyType &t) {
  return check_isogeny_type(t.source, t.target, t.matrix);
}

/// Saturation of M^{-1} Z^2(n+n') against both coordinate blocks: the
/// kernel F embeds in X and in X' separately.
struct SaturationVerdict {
  bool x = false;
  bool x_comp = false;
};

inline SaturationVerdict embedding_saturation(const IntMatrix &m, std::size_t n,
                                              std::size_t n_comp) {
  const std::size_t k = 2 * (n + n_comp);
  const Lattice l = Lattice::from_generators(rat_inverse(m));
  SaturationVerdict v;
  v.x = intersect_with_coordinate_block(l, 0, 2 * n) == coordinate_block_lattice(k, 0, 2 * n);
  v.x_comp = intersect_with_coordinate_block(l, 2 * n, k) == coordinate_block_lattice(k, 2 * n, k);
  return v;
}

inline CheckReport check_embedding_type(const PolarizationType &d,
                                        const PolarizationType &d_comp,
                                        const PolarizationType &e, const IntMatrix &m) {
  if (e.dim() != d.dim() + d_comp.dim())
    throw Error(ErrorKind::SizeMismatch,
                "ambient type " + e.str() + " for " + d.str() + " x " + d_comp.str());
  if (!m.is_square() || m.rows() != 2 * e.dim())
    throw Error(ErrorKind::SizeMismatch, "embedding matrix " + m.shape());
  CheckReport r;
  if (m.transpose() * gram(e) * m != direct_sum(gram(d), gram(d_comp)))
    r.failures.emplace_back(failure::gram_product);
  if (det(m) != 0) {
    r.kernel = cokernel(m);
    const auto sat = embedding_saturation(m, d.dim(), d_comp.dim());
    if (!sat.x) r.failures.emplace_back(failure::saturation_x);
    if (!sat.x_comp) r.failures.emplace_back(failure::saturation_xcomp);
  }
  r.valid = r.failures.empty();
  return r;
}

inline CheckReport check_embedding_type(const EmbeddingType &t) {
  return check_embedding_type(t.sub, t.complement, t.ambient, t.matrix);
}

/// L_F = projection of M^{-1} Z^2(n+n') to the X-block; contains Z^2n.
inline Lattice kernel_image_in_x(const IntMatrix &m, std::size_t n) {
  return project_to_block(Lattice::from_generators(rat_inverse(m)), 0, 2 * n);
}

/// Q = N (P (+) 0) M^{-1}, exact rational result.
inline RatMatrix induced_rational(const MorphismType &t) {
  const std::size_t n = t.d.dim(), nc = t.d_comp.dim(), mc = t.h_comp.dim();
  IntMatrix pz(2 * (t.h.dim() + mc), 2 * (n + nc));
  pz.set_block(0, 0, t.p);
  return to_rational(t.n * pz) * rat_inverse(t.m);
}

inline CheckReport check_morphism_type(const MorphismType &t) {
  const std::size_t n = t.d.dim(), nc = t.d_comp.dim();
  const std::size_t mm = t.h.dim(), mc = t.h_comp.dim();
  if (n != mm)
    throw Error(ErrorKind::DimensionClash, "X has dimension " + std::to_string(n) +
                                               " but Y has dimension " + std::to_string(mm));
  if (t.e.dim() != n + nc || t.k.dim() != mm + mc)
    throw Error(ErrorKind::DimensionClash, "ambient dimensions do not add up");
  if (!t.m.is_square() || t.m.rows() != 2 * (n + nc) || !t.n.is_square() ||
      t.n.rows() != 2 * (mm + mc) || !t.p.is_square() || t.p.rows() != 2 * n)
    throw Error(ErrorKind::SizeMismatch, "matrix sizes do not match the types");

  CheckReport r;
  const auto src = check_embedding_type(t.source_embedding());
  const auto tgt = check_embedding_type(t.target_embedding());
  const auto iso = check_isogeny_type(t.isogeny());
  for (const auto &f : src.failures) r.failures.push_back("M:" + f);
  for (const auto &f : tgt.failures) r.failures.push_back("N:" + f);
  for (const auto &f : iso.failures) r.failures.push_back("P:" + f);
  r.kernel = src.kernel;
  r.target_kernel = tgt.kernel;

  const bool m_ok = det(t.m) != 0;
  if (m_ok) {
    // P must kill the image of F in X
    const Lattice lf = kernel_image_in_x(t.m, n);
    const RatMatrix b = lf.basis(); // square: L_F has full rank
    const RatMatrix pb = to_rational(t.p) * b;
    if (is_integral(pb)) {
      r.factorization = std::make_pair(to_integer(pb), to_integer(rat_inverse(b)));
    } else {
      r.failures.emplace_back(failure::kernel_kill);
    }
  }
  if (m_ok) {
    const RatMatrix q = induced_rational(t);
    if (is_integral(q)) r.induced_matrix = to_integer(q);
    else r.failures.emplace_back(failure::induced_integrality);
    // killing F is sufficient for integrality
    if (r.factorization && !r.induced_matrix)
      throw Error(ErrorKind::NotIntegral, "kernel is killed but the induced matrix is not integral");
  }
  r.valid = r.failures.empty();
  return r;
}

inline FiniteAbelianGroup kernel_structure(const IntMatrix &m) { return cokernel(m); }

// ---------------------------------------------------------------------------
// Action of the symplectic groups.

struct IsogenyWitness {
  IntMatrix a; ///< in Sp(D)
  IntMatrix b; ///< in Sp(E)
};
struct EmbeddingWitness {
  IntMatrix a, a_comp; ///< in Sp(D), Sp(D')
  IntMatrix b;         ///< in Sp(E)
};
struct MorphismWitness {
  IntMatrix a, a_comp, b; ///< Sp(D), Sp(D'), Sp(E)
  IntMatrix c, c_comp, f; ///< Sp(H), Sp(H'), Sp(K)
};

namespace detail {
inline void require_symplectic(const IntMatrix &a, const PolarizationType &d,
                               const char *slot) {
  if (!a.is_square() || a.rows() != 2 * d.dim() || !is_symplectic(a, d))
    throw Error(ErrorKind::NotSymplectic, std::string("witness ") + slot +
                                              " is not in Sp" + d.str());
}
} // namespace detail

/// M -> B M A^-1
inline IsogenyType apply_equivalence(const IsogenyType &t, const IsogenyWitness &w) {
  detail::require_symplectic(w.a, t.source, "A");
  detail::require_symplectic(w.b, t.target, "B");
  return {t.source, t.target, w.b * t.matrix * unimodular_inverse(w.a)};
}

/// M -> B M (A (+) A')^-1
inline EmbeddingType apply_equivalence(const EmbeddingType &t, const EmbeddingWitness &w) {
  detail::require_symplectic(w.a, t.sub, "A");
  detail::require_symplectic(w.a_comp, t.complement, "A'");
  detail::require_symplectic(w.b, t.ambient, "B");
  return {t.sub, t.complement, t.ambient,
          w.b * t.matrix * unimodular_inverse(direct_sum(w.a, w.a_comp))};
}

/// Simultaneous change of all six symplectic bases:
/// M -> B M (A (+) A')^-1, N -> F N (C (+) C')^-1, P -> C P A^-1.
inline MorphismType apply_equivalence(const MorphismType &t, const MorphismWitness &w) {
  detail::require_symplectic(w.a, t.d, "A");
  detail::require_symplectic(w.a_comp, t.d_comp, "A'");
  detail::require_symplectic(w.b, t.e, "B");
  detail::require_symplectic(w.c, t.h, "C");
  detail::require_symplectic(w.c_comp, t.h_comp, "C'");
  detail::require_symplectic(w.f, t.k, "F");
  MorphismType out = t;
  out.m = w.b * t.m * unimodular_inverse(direct_sum(w.a, w.a_comp));
  out.n = w.f * t.n * unimodular_inverse(direct_sum(w.c, w.c_comp));
  out.p = w.c * t.p * unimodular_inverse(w.a);
  return out;
}

struct StabilizerVerdict {
  bool in_stabilizer = false;
  std::optional<IntMatrix> image; ///< B = M A M^-1 when accepted
};

/// (A, M A M^-1) lies in the stabilizer of M.
inline StabilizerVerdict is_in_stabilizer(const IntMatrix &a, const IsogenyType &t) {
  const std::size_t n = t.source.dim();
  if (!a.is_square() || a.rows() != 2 * n || t.matrix.rows() != 2 * n)
    throw Error(ErrorKind::SizeMismatch, "stabilizer candidate " + a.shape());
  if (!is_symplectic(a, t.source)) return {};
  const RatMatrix b = to_rational(t.matrix * a) * rat_inverse(t.matrix);
  if (!is_integral(b)) return {};
  IntMatrix bi = to_integer(b);
  if (!is_symplectic(bi, t.target)) return {};
  return {true, std::move(bi)};
}

// ---------------------------------------------------------------------------
// Elliptic curves.

struct EllipticCanonical {
  Integer d1, d2; ///< d1 | d2, d1 * d2 = |det M|
  friend bool operator==(const EllipticCanonical &, const EllipticCanonical &) = default;
};

inline EllipticCanonical elliptic_canonical(const IntMatrix &m) {
  if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorKind::NotTwoByTwo, m.shape());
  const auto s = snf(m).s;
  if (s(1, 1) == 0) throw Error(ErrorKind::Singular, "elliptic isogeny matrix is singular");
  return {s(0, 0), s(1, 1)};
}

struct HeckeFactors {
  IntMatrix u; ///< type (a, b)
  IntMatrix g; ///< type (1, p); g * u == m
};

/// Splits an elliptic isogeny of canonical type (a, b p), a | b, gcd(b, p) = 1,
/// as X -u-> U -g-> Y.
inline HeckeFactors hecke_factor(const IntMatrix &m, const Integer &p) {
  if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorKind::NotTwoByTwo, m.shape());
  auto [s, u, v] = snf(m);
  if (s(1, 1) == 0) throw Error(ErrorKind::Singular, "elliptic isogeny matrix is singular");
  const Integer &a = s(0, 0);
  if (p <= 0 || s(1, 1) % p != 0)
    throw Error(ErrorKind::BadDivisor, p.str() + " does not divide " + Integer(s(1, 1)).str());
  const Integer b = s(1, 1) / p;
  if (b % a != 0 || gcd(b, p) != 1)
    throw Error(ErrorKind::BadDivisor, "need a | b and gcd(b, p) = 1 for (a, b p) = (" +
                                           a.str() + ", " + Integer(s(1, 1)).str() + ")");
  // m = u^-1 diag(1, p) diag(a, b) v^-1
  IntMatrix g = unimodular_inverse(u) * IntMatrix::diagonal({Integer(1), p});
  IntMatrix uu = IntMatrix::diagonal({a, b}) * unimodular_inverse(v);
  return {std::move(uu), std::move(g)};
}

} // namespace avt
