#pragma once

#include <string>
#include <vector>

#include "coefchange/ff.hpp"
#include "coefchange/poly.hpp"

namespace coefchange {

/// Element of the twisted polynomial ring K{tau}, tau*b = b^q*tau. Coefficients constant first.
class SkewPoly {
 public:
  SkewPoly() = default;
  explicit SkewPoly(const FieldTower& k) : tower_(&k) {}
  SkewPoly(const FieldTower& k, std::vector<FieldElement> coeffs);

  static SkewPoly constant(const FieldElement& c);
  /// c * tau^i
  static SkewPoly monomial(const FieldElement& c, int i);
  static SkewPoly tau(const FieldTower& k) { return monomial(FieldElement::one(k), 1); }

  const FieldTower& tower() const;
  bool attached() const noexcept { return tower_ != nullptr; }
  int degree() const noexcept { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<FieldElement>& coeffs() const noexcept { return c_; }
  FieldElement coeff(std::size_t i) const;
  FieldElement lead() const;

  SkewPoly operator+(const SkewPoly& o) const;
  SkewPoly operator-(const SkewPoly& o) const;
  SkewPoly operator-() const;
  /// Product in K{tau}.
  SkewPoly operator*(const SkewPoly& o) const;
  SkewPoly& operator+=(const SkewPoly& o) { return *this = *this + o; }
  SkewPoly& operator*=(const SkewPoly& o) { return *this = *this * o; }

  SkewPoly map(const Embedding& emb) const;

  friend bool operator==(const SkewPoly& a, const SkewPoly& b) noexcept {
    return a.tower_ == b.tower_ && a.c_ == b.c_;
  }

  std::string to_string() const;

 private:
  void normalize();
  void check_same(const SkewPoly& o) const;

  const FieldTower* tower_ = nullptr;
  std::vector<FieldElement> c_;
};

SkewPoly skew_mul(const SkewPoly& a, const SkewPoly& b);

/// sum delta_i x^(q^i). x may live in an extension of P's field (P is embedded first).
FieldElement evaluate_additive(const SkewPoly& P, const FieldElement& x);

/// Places an element of F_q (or of any tower over the same F_q that lies in F_q) into k.
/// Throws NonCentralCoefficient when c is not in F_q.
FieldElement lift_constant(const FieldElement& c, const FieldTower& k);

/// p(D) for p with coefficients in F_q. p may be given over F_q itself or over D's field.
SkewPoly substitute(const Poly& p, const SkewPoly& D);

/// eps^-1 * D * eps: delta_i -> delta_i * eps^(q^i - 1).
SkewPoly conjugate(const SkewPoly& D, const FieldElement& eps);

/// Strict canonical order: higher tau-coefficients are more significant, each compared by
/// canonical field index; shorter polynomials first.
bool canonical_less(const SkewPoly& a, const SkewPoly& b);

}  // namespace coefchange
