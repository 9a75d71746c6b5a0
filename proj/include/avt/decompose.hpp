#pragma once

// Poincare decomposition of a morphism f : V -> W given by its integral
// representation q in symplectic bases of V and W.
//
//   X' = connected kernel        : saturation of ker q
//   X  = complement of X' in V   : E-orthogonal of ker q
//   Y  = image                   : saturation of im q
//   Y' = complement of Y in W    : K-orthogonal of im q
//
// Each piece receives a symplectic basis of its restricted form, and
// (M, N, P) are read off in those bases.

#include "avt/error.hpp"
#include "avt/matrix.hpp"
#include "avt/morphism_types.hpp"
#include "avt/normal_form.hpp"
#include "avt/symplectic.hpp"

#include <utility>

namespace avt {

struct Decomposition {
  MorphismType type;
  /// Columns: symplectic bases of (X, X') inside V and of (Y, Y') inside W,
  /// i.e. the matrices M and N as changes of basis.
  std::pair<IntMatrix, IntMatrix> basis_change;
  /// The middle isogeny preserves the polarizations: ^tP H P == D.
  bool compatible = false;
};

namespace detail {

struct SymplecticSublattice {
  PolarizationType type;
  IntMatrix basis; // columns in the ambient coordinates
};

inline SymplecticSublattice restrict_form(const IntMatrix &basis, const IntMatrix &form) {
  try {
    auto nf = alternating_type(basis.transpose() * form * basis);
    return {std::move(nf.type), basis * nf.basis};
  } catch (const Error &e) {
    if (e.kind() == ErrorKind::Degenerate)
      throw Error(ErrorKind::DegenerateRestriction, e.what());
    throw;
  }
}

inline IntMatrix orthogonal_complement(const IntMatrix &basis, const IntMatrix &form) {
  IntMatrix lhs = basis.transpose() * form;
  if (lhs.rows() == 0) lhs = IntMatrix(0, form.cols());
  return kernel_basis(lhs);
}

inline IntMatrix saturated_image(const IntMatrix &q) {
  IntMatrix left = kernel_basis(q.transpose()).transpose();
  if (left.rows() == 0) left = IntMatrix(0, q.rows());
  return kernel_basis(left);
}

} // namespace detail

inline Decomposition decompose_morphism(const PolarizationType &e_amb,
                                        const PolarizationType &k_amb, const IntMatrix &q) {
  const std::size_t dv = 2 * e_amb.dim(), dw = 2 * k_amb.dim();
  if (q.rows() != dw || q.cols() != dv)
    throw Error(ErrorKind::SizeMismatch, "morphism matrix " + q.shape() + " for types " +
                                             e_amb.str() + " -> " + k_amb.str());
  const IntMatrix ge = gram(e_amb), gk = gram(k_amb);

  IntMatrix ker = kernel_basis(q);
  if (ker.cols() == 0) ker = IntMatrix(dv, 0);
  IntMatrix img = detail::saturated_image(q);
  if (img.cols() == 0) img = IntMatrix(dw, 0);

  const auto x = detail::restrict_form(detail::orthogonal_complement(ker, ge), ge);
  const auto xc = detail::restrict_form(ker, ge);
  const auto y = detail::restrict_form(img, gk);
  const auto yc = detail::restrict_form(detail::orthogonal_complement(img, gk), gk);
  if (x.type.dim() != y.type.dim())
    throw Error(ErrorKind::DegenerateRestriction, "complement and image dimensions differ");
  if (x.type.dim() + xc.type.dim() != e_amb.dim() || y.type.dim() + yc.type.dim() != k_amb.dim())
    throw Error(ErrorKind::DegenerateRestriction, "subvarieties are not complementary");

  IntMatrix m = hconcat(x.basis, xc.basis);
  IntMatrix n = hconcat(y.basis, yc.basis);
  if (m.cols() == 0) m = IntMatrix(dv, dv);
  if (n.cols() == 0) n = IntMatrix(dw, dw);

  // coordinates of q restricted to X in the basis (Y, Y'); the Y'-part vanishes
  const std::size_t two_m = 2 * y.type.dim();
  IntMatrix p;
  {
    const RatMatrix coords = rat_inverse(n) * to_rational(q * x.basis);
    const IntMatrix c = to_integer(coords);
    if (!c.block(two_m, c.rows(), 0, c.cols()).is_zero())
      throw Error(ErrorKind::DegenerateRestriction, "image leaves Y");
    p = c.block(0, two_m, 0, c.cols());
    if (x.basis.cols() == 0) p = IntMatrix(two_m, 0);
  }

  Decomposition out;
  out.type = MorphismType{x.type, xc.type, e_amb, y.type, yc.type, k_amb, m, n, p};
  out.compatible = p.transpose() * gram(y.type) * p == gram(x.type);
  out.basis_change = {std::move(m), std::move(n)};
  return out;
}

} // namespace avt
