#pragma once

#include "avt/error.hpp"
#include "avt/matrix.hpp"
#include "avt/normal_form.hpp"

#include <string>
#include <utility>
#include <vector>

namespace avt {

/// Finite abelian group Z_{f1} x ... x Z_{fk} with f1 | f2 | ... | fk and
/// every fi >= 2. The empty list is the trivial group.
class FiniteAbelianGroup {
public:
  FiniteAbelianGroup() = default;

  /// Takes invariant factors already in canonical form; throws otherwise.
  explicit FiniteAbelianGroup(std::vector<Integer> invariant_factors)
      : factors_(std::move(invariant_factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] < 2)
        throw Error(ErrorKind::Malformed, "invariant factor below 2");
      if (i > 0 && factors_[i] % factors_[i - 1] != 0)
        throw Error(ErrorKind::Malformed, "invariant factors do not form a chain");
    }
  }

  /// Canonical form of Z_{c1} x ... x Z_{ck} for arbitrary positive orders.
  static FiniteAbelianGroup from_cyclic_orders(const std::vector<Integer> &orders) {
    std::vector<Integer> diag;
    for (const auto &o : orders) {
      if (o <= 0) throw Error(ErrorKind::Malformed, "cyclic order must be positive");
      diag.push_back(o);
    }
    auto s = snf(IntMatrix::diagonal(diag)).s;
    std::vector<Integer> f;
    for (std::size_t i = 0; i < s.rows(); ++i)
      if (s(i, i) != 1) f.push_back(s(i, i));
    return FiniteAbelianGroup(std::move(f));
  }

  [[nodiscard]] const std::vector<Integer> &invariant_factors() const noexcept {
    return factors_;
  }
  [[nodiscard]] Integer order() const {
    Integer o = 1;
    for (const auto &f : factors_) o *= f;
    return o;
  }
  [[nodiscard]] bool is_trivial() const noexcept { return factors_.empty(); }

  /// Number of x with t*x = 0.
  [[nodiscard]] Integer torsion_count(const Integer &t) const {
    Integer c = 1;
    for (const auto &f : factors_) c *= gcd(f, t);
    return c;
  }

  [[nodiscard]] std::string str() const {
    if (factors_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      s += (i ? " x Z_" : "Z_") + factors_[i].str();
    return s;
  }

  friend bool operator==(const FiniteAbelianGroup &, const FiniteAbelianGroup &) = default;

private:
  std::vector<Integer> factors_;
};

/// Z^k / m Z^k for square nonsingular m.
inline FiniteAbelianGroup cokernel(const IntMatrix &m) {
  if (!m.is_square()) throw Error(ErrorKind::NonSquare, "cokernel of " + m.shape());
  auto s = snf(m).s;
  std::vector<Integer> f;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (s(i, i) == 0) throw Error(ErrorKind::Singular, "cokernel is infinite");
    if (s(i, i) != 1) f.push_back(s(i, i));
  }
  return FiniteAbelianGroup(std::move(f));
}

/// Coset representatives of m^{-1} Z^k / Z^k, reduced into [0,1)^k.
/// The list has exactly |det m| elements; the zero vector comes first.
inline std::vector<RatVector> kernel_cosets(const IntMatrix &m, const Integer &max_order) {
  if (!m.is_square()) throw Error(ErrorKind::NonSquare, "kernel_cosets of " + m.shape());
  const Integer d = abs(det(m));
  if (d == 0) throw Error(ErrorKind::Singular, "kernel_cosets of a singular matrix");
  if (d > max_order)
    throw Error(ErrorKind::OrderTooLarge,
                "|det| = " + d.str() + " exceeds " + max_order.str());
  // m^{-1} Z^k = v s^{-1} Z^k, generated by v_i / s_i
  auto [s, u, v] = snf(m);
  const std::size_t k = m.rows();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < k; ++i)
    if (s(i, i) != 1) idx.push_back(i);

  std::vector<RatVector> out;
  out.reserve(static_cast<std::size_t>(d));
  std::vector<Integer> c(idx.size(), 0);
  for (;;) {
    RatVector x(k, Rational(0));
    for (std::size_t a = 0; a < idx.size(); ++a) {
      const std::size_t i = idx[a];
      for (std::size_t r = 0; r < k; ++r) x[r] += Rational(c[a] * v(r, i), s(i, i));
    }
    for (auto &e : x) e = frac(e);
    out.push_back(std::move(x));
    std::size_t a = 0;
    while (a < idx.size()) {
      if (++c[a] < s(idx[a], idx[a])) break;
      c[a] = 0;
      ++a;
    }
    if (a == idx.size()) break;
  }
  return out;
}

} // namespace avt
