#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "coefchange/ff.hpp"

namespace coefchange {

/// Degree of the zero polynomial; compares below every real degree.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

/// Dense univariate polynomial over a FieldTower, constant term first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const FieldTower& k) : tower_(&k) {}
  Poly(const FieldTower& k, std::vector<FieldElement> coeffs);

  static Poly constant(const FieldElement& c);
  static Poly monomial(const FieldElement& c, int degree);
  /// The variable itself.
  static Poly variable(const FieldTower& k);
  static Poly from_ints(const FieldTower& k, const std::vector<std::int64_t>& coeffs);

  const FieldTower& tower() const;
  bool attached() const noexcept { return tower_ != nullptr; }
  int degree() const noexcept { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  const std::vector<FieldElement>& coeffs() const noexcept { return c_; }
  FieldElement coeff(std::size_t i) const;
  FieldElement lead() const;
  /// Order of vanishing at 0; kZeroDegree for the zero polynomial.
  int valuation() const noexcept;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const FieldElement& s) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Euclidean division; throws DivisionByZero for a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly monic() const;
  Poly pow(unsigned n) const;
  FieldElement eval(const FieldElement& x) const;
  /// Composition f(g).
  Poly compose(const Poly& g) const;
  /// Coefficientwise q^e-power Frobenius.
  Poly frobenius(std::uint64_t e = 1) const;
  /// t^n f(1/t); requires degree <= n.
  Poly reversed(int n) const;
  Poly map(const Embedding& emb) const;

  friend bool operator==(const Poly& a, const Poly& b) noexcept {
    return a.tower_ == b.tower_ && a.c_ == b.c_;
  }

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  void check_same(const Poly& o) const;

  const FieldTower* tower_ = nullptr;
  std::vector<FieldElement> c_;
};

/// Monic gcd; zero when both inputs are zero.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace coefchange
