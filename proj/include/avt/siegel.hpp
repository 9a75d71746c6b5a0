#pragma once

// Siegel upper half space and period data in double precision.
//
// Column convention: a period basis is an n x 2n complex matrix whose columns
// are the lattice generators. Changing the basis by an integer matrix M means
// right multiplication, columns' = columns * M.

#include "avt/error.hpp"
#include "avt/matrix.hpp"
#include "avt/morphism_types.hpp"
#include "avt/normal_form.hpp"
#include "avt/symplectic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

namespace avt {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double default_tolerance = 1e-9;
inline constexpr double max_condition_number = 1e12;

/// Point of H_n: symmetric with positive definite imaginary part.
struct SiegelPoint {
  ComplexMatrix z;
  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(z.rows()); }
};

struct PeriodBasis {
  ComplexMatrix columns; ///< n x 2n
  PolarizationType type;
  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(columns.rows()); }
};

namespace detail {

inline RealMatrix to_real(const IntMatrix &m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).convert_to<double>();
  return r;
}

inline RealMatrix to_real(const RatMatrix &m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).convert_to<double>();
  return r;
}

inline ComplexMatrix delta(const PolarizationType &d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.dim()),
                                        static_cast<Eigen::Index>(d.dim()));
  for (std::size_t i = 0; i < d.dim(); ++i)
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i].convert_to<double>();
  return m;
}

inline double min_eigenvalue(const RealMatrix &sym) {
  if (sym.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline double condition_number(const ComplexMatrix &m) {
  if (m.rows() == 0) return 1.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto &s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

} // namespace detail

inline bool validate_siegel(const SiegelPoint &p, double tol = default_tolerance) {
  const ComplexMatrix &z = p.z;
  if (z.rows() != z.cols()) return false;
  if (!z.allFinite()) return false;
  if (z.size() > 0 && (z - z.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  const RealMatrix im = z.imag();
  return detail::min_eigenvalue(0.5 * (im + im.transpose())) > tol;
}

/// Columns (Z | diag(d)).
inline PeriodBasis period_basis(const SiegelPoint &p, const PolarizationType &d) {
  if (p.dim() != d.dim())
    throw Error(ErrorKind::SizeMismatch, "Siegel point of dimension " + std::to_string(p.dim()) +
                                             " for type " + d.str());
  if (!validate_siegel(p)) throw Error(ErrorKind::InvalidSiegelPoint, "not a point of H_n");
  const auto n = static_cast<Eigen::Index>(d.dim());
  ComplexMatrix cols(n, 2 * n);
  cols << p.z, detail::delta(d);
  return {std::move(cols), d};
}

/// Riemann relations for the alternating form E = gram(type) on the columns
/// P: P E^-1 P^T = 0 and the Hermitian matrix i P E^-1 P^* is positive
/// definite. Both sides use the exact inverse of E, never the inverse of P.
inline bool validate_period_basis(const PeriodBasis &p, double tol = default_tolerance) {
  const auto n = static_cast<Eigen::Index>(p.type.dim());
  if (p.columns.rows() != n || p.columns.cols() != 2 * n || !p.columns.allFinite()) return false;
  if (n == 0) return true;
  const ComplexMatrix e_inv = detail::to_real(rat_inverse(gram(p.type))).cast<std::complex<double>>();
  const ComplexMatrix &cols = p.columns;
  const double scale =
      std::max(1.0, cols.cwiseAbs().maxCoeff() * cols.cwiseAbs().maxCoeff() * e_inv.cwiseAbs().maxCoeff());
  if ((cols * e_inv * cols.transpose()).cwiseAbs().maxCoeff() > tol * scale) return false;
  const ComplexMatrix h = std::complex<double>(0.0, 1.0) * cols * e_inv * cols.adjoint();
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > tol * scale) return false;
  const ComplexMatrix herm = 0.5 * (h + h.adjoint());
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(herm, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() > tol * std::max(1.0, herm.cwiseAbs().maxCoeff());
}

/// Z = diag(d) * G2^-1 * G1 for columns (G1 | G2): the unique Siegel
/// coordinate of the GL(n, C)-orbit of the basis.
inline SiegelPoint normalize(const PeriodBasis &p) {
  const auto n = static_cast<Eigen::Index>(p.type.dim());
  if (p.columns.rows() != n || p.columns.cols() != 2 * n)
    throw Error(ErrorKind::SizeMismatch, "period basis shape does not match its type");
  const ComplexMatrix g1 = p.columns.leftCols(n), g2 = p.columns.rightCols(n);
  if (detail::condition_number(g2) > max_condition_number)
    throw Error(ErrorKind::NearSingularBlock, "right block of the period basis is near singular");
  SiegelPoint out{detail::delta(p.type) * g2.partialPivLu().solve(g1)};
  if (n == 0) out.z = ComplexMatrix(0, 0);
  return out;
}

/// Siegel coordinate of X for an isogeny X -> Y of type (d, e, m), given the
/// coordinate of Y: the basis of H_1(X) is (Z_Y | diag(e)) * m.
inline SiegelPoint transport(const SiegelPoint &z_target, const PolarizationType &e,
                             const PolarizationType &d, const IntMatrix &m,
                             double tol = default_tolerance) {
  if (!check_isogeny_type(d, e, m).valid)
    throw Error(ErrorKind::InvalidType, "not an isogeny type " + d.str() + " -> " + e.str());
  const PeriodBasis target = period_basis(z_target, e);
  SiegelPoint out = normalize({target.columns * detail::to_real(m).cast<std::complex<double>>(), d});
  if (!validate_siegel(out, tol))
    throw Error(ErrorKind::InvalidSiegelPoint, "transported point left H_n");
  return out;
}

/// Change of symplectic basis by r in Sp(d, Z); a right action:
/// sp_action(sp_action(z, r1), r2) == sp_action(z, r1 * r2).
inline SiegelPoint sp_action(const SiegelPoint &z, const PolarizationType &d, const IntMatrix &r,
                             double tol = default_tolerance) {
  if (!r.is_square() || r.rows() != 2 * d.dim() || !is_symplectic(r, d))
    throw Error(ErrorKind::NotSymplectic, "matrix is not in Sp" + d.str());
  return transport(z, d, d, r, tol);
}

namespace detail {
inline ComplexMatrix block_diagonal_basis(const PeriodBasis &a, const PeriodBasis &b) {
  const auto n = a.columns.rows(), nc = b.columns.rows();
  ComplexMatrix out = ComplexMatrix::Zero(n + nc, 2 * (n + nc));
  out.block(0, 0, n, 2 * n) = a.columns;
  out.block(n, 2 * n, nc, 2 * nc) = b.columns;
  return out;
}
} // namespace detail

/// Ambient Siegel coordinate of Y = (X x X') / F for a valid embedding type:
/// periods of Y are the product periods times M^-1.
inline SiegelPoint realize_embedding(const SiegelPoint &z_sub, const SiegelPoint &z_comp,
                                     const EmbeddingType &t, double tol = default_tolerance) {
  if (!check_embedding_type(t).valid) throw Error(ErrorKind::InvalidType, "not an embedding type");
  const PeriodBasis px = period_basis(z_sub, t.sub);
  const PeriodBasis pxc = period_basis(z_comp, t.complement);
  const ComplexMatrix prod = detail::block_diagonal_basis(px, pxc);
  const ComplexMatrix amb = prod * detail::to_real(rat_inverse(t.matrix)).cast<std::complex<double>>();
  PeriodBasis ambient{amb, t.ambient};
  if (!validate_period_basis(ambient, tol))
    throw Error(ErrorKind::InvalidSiegelPoint, "ambient periods violate the Riemann relations");
  SiegelPoint out = normalize(ambient);
  if (!validate_siegel(out, tol))
    throw Error(ErrorKind::InvalidSiegelPoint, "ambient point left H_n");
  return out;
}

struct RealizedMorphism {
  SiegelPoint z_v;
  SiegelPoint z_w;
  SiegelPoint z_y; ///< image of X, derived from z_x through P
  IntMatrix q;     ///< integral representation of V -> W
};

/// Builds V = (X x X')/F, W = (Y x Y')/G and f : V -> W from X, X', Y' and a
/// valid morphism type; Y is determined by X through the isogeny P.
inline RealizedMorphism realize_morphism(const SiegelPoint &z_x, const SiegelPoint &z_xcomp,
                                         const SiegelPoint &z_ycomp, const MorphismType &t,
                                         double tol = default_tolerance) {
  const CheckReport report = check_morphism_type(t);
  if (!report.valid) throw Error(ErrorKind::InvalidType, "not a morphism type");
  const PeriodBasis px = period_basis(z_x, t.d);
  // periods of X are those of Y times P
  const ComplexMatrix py =
      px.columns * detail::to_real(rat_inverse(t.p)).cast<std::complex<double>>();
  PeriodBasis ybasis{py, t.h};
  if (!validate_period_basis(ybasis, tol))
    throw Error(ErrorKind::InvalidSiegelPoint, "periods of Y violate the Riemann relations");
  SiegelPoint z_y = normalize(ybasis);
  RealizedMorphism out;
  out.z_v = realize_embedding(z_x, z_xcomp, t.source_embedding(), tol);
  out.z_w = realize_embedding(z_y, z_ycomp, t.target_embedding(), tol);
  out.z_y = std::move(z_y);
  out.q = *report.induced_matrix;
  return out;
}

/// Residual of the best complex-linear A with A * Pi_V = Pi_W * q; zero when
/// q is the homology representation of a holomorphic map V -> W.
inline double analytic_residual(const PeriodBasis &v, const PeriodBasis &w, const IntMatrix &q) {
  const ComplexMatrix rhs = w.columns * detail::to_real(q).cast<std::complex<double>>();
  if (v.columns.rows() == 0) return rhs.size() ? rhs.cwiseAbs().maxCoeff() : 0.0;
  // A = rhs * Pi_V^+ via least squares on the transposed system
  const ComplexMatrix at = v.columns.transpose().colPivHouseholderQr().solve(rhs.transpose());
  const ComplexMatrix a = at.transpose();
  return rhs.size() ? (a * v.columns - rhs).cwiseAbs().maxCoeff() : 0.0;
}

} // namespace avt
