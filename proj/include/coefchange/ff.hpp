#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "coefchange/errors.hpp"

namespace coefchange {

inline constexpr std::size_t kMaxDigits = 16;
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

class FieldElement;

/**
 * A finite field K = F_q[w]/(g(w)) where F_q = F_p[z]/(f(z)).
 *
 * f is the base modulus (degree e over F_p, q = p^e) and g the extension modulus
 * (degree m over F_q, |K| = q^m). Both are checked for irreducibility by exhaustive
 * factor search when the tower is first requested.
 *
 * Towers are interned: FieldTower::get returns the same object for the same parameters,
 * so two elements live in the same field iff their tower addresses agree. Towers are
 * immutable and live for the rest of the program.
 */
class FieldTower {
 public:
  /// An element of F_q written as e digits over F_p, constant term first.
  using BaseCoeff = std::vector<std::uint32_t>;

  static const FieldTower& get(std::uint32_t p, std::vector<std::uint32_t> base_modulus,
                               std::vector<BaseCoeff> ext_modulus);
  /// F_p, with base modulus z and extension modulus w.
  static const FieldTower& prime_field(std::uint32_t p);

  /// F_q regarded as a tower with trivial extension.
  const FieldTower& base_field() const;
  /// The degree-s extension of K as a fresh tower of degree m*s over F_q, using the
  /// smallest monic irreducible modulus in lexicographic coefficient order.
  const FieldTower& extension(unsigned s, std::uint64_t cap = kDefaultEnumerationCap) const;

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned base_degree() const noexcept { return e_; }
  unsigned degree() const noexcept { return m_; }
  /// Size of the constant field F_q.
  std::uint64_t q() const noexcept { return q_; }
  /// Size of K.
  std::uint64_t size() const noexcept { return size_; }

  const std::vector<std::uint32_t>& base_modulus() const noexcept { return base_; }
  const std::vector<BaseCoeff>& ext_modulus() const noexcept { return ext_; }

  /// True when both towers have the same F_q (same p and base modulus).
  bool same_base(const FieldTower& other) const noexcept;
  std::string describe() const;

  FieldTower(const FieldTower&) = delete;
  FieldTower& operator=(const FieldTower&) = delete;

 private:
  FieldTower(std::uint32_t p, std::vector<std::uint32_t> base, std::vector<BaseCoeff> ext);

  void base_mul(const std::uint16_t* a, const std::uint16_t* b, std::uint16_t* out) const;
  void mul(const std::uint16_t* a, const std::uint16_t* b, std::uint16_t* out) const;
  void frobenius_once(const std::uint16_t* a, std::uint16_t* out) const;
  // coeffs: (degree+1)*e digits, constant first, monic
  bool irreducible_over_fq(const std::vector<std::uint16_t>& coeffs, unsigned degree) const;

  std::uint32_t p_;
  unsigned e_;
  unsigned m_;
  std::uint64_t q_;
  std::uint64_t size_;
  std::vector<std::uint32_t> base_;
  std::vector<BaseCoeff> ext_;
  // ext_ flattened to m*e digits (monic leading coefficient dropped)
  std::vector<std::uint16_t> ext_flat_;
  // images of w^j under the q-power map, m*e digits each
  std::vector<std::array<std::uint16_t, kMaxDigits>> frob_;

  friend class FieldElement;
  friend std::vector<BaseCoeff> smallest_irreducible(const FieldTower& base, unsigned degree);
};

/// An element of a FieldTower. Value type; cheap to copy.
class FieldElement {
 public:
  using Digits = std::array<std::uint16_t, kMaxDigits>;

  /// A detached element with no field; only assignment and comparison are meaningful.
  FieldElement() = default;

  static FieldElement zero(const FieldTower& k);
  static FieldElement one(const FieldTower& k);
  static FieldElement from_int(const FieldTower& k, std::int64_t v);
  /// Inverse of index(): digits of v in base p, constant digit least significant.
  static FieldElement from_index(const FieldTower& k, std::uint64_t v);
  /// m coordinates over F_q, each of at most e digits; missing entries are zero.
  static FieldElement from_coords(const FieldTower& k, const std::vector<FieldTower::BaseCoeff>& coords);
  /// An element of F_q placed in the constant coordinate of K.
  static FieldElement from_base(const FieldTower& k, const FieldTower::BaseCoeff& digits);
  /// The class of w in K.
  static FieldElement generator(const FieldTower& k);

  bool attached() const noexcept { return tower_ != nullptr; }
  const FieldTower& tower() const;

  /// Position in the canonical enumeration order.
  std::uint64_t index() const noexcept;
  std::vector<FieldTower::BaseCoeff> coords() const;
  std::uint16_t digit(std::size_t k) const noexcept { return d_[k]; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  /// True iff the element lies in F_q, i.e. is fixed by the q-power map.
  bool in_base_field() const noexcept;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement inverse() const;
  FieldElement pow(std::uint64_t n) const;
  /// a^(q^e).
  FieldElement frobenius(std::uint64_t e = 1) const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return a.tower_ == b.tower_ && a.d_ == b.d_;
  }
  /// Canonical order: by tower address, then by index.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) noexcept;

  std::string to_string() const;

 private:
  void check_same(const FieldElement& o) const;
  std::size_t width() const noexcept { return std::size_t{tower_->m_} * tower_->e_; }

  const FieldTower* tower_ = nullptr;
  Digits d_{};
};

enum class ArithOp { add, sub, mul, div };

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op);
FieldElement frobenius(const FieldElement& a, std::uint64_t e);

/// A ring embedding K -> L fixing F_q. The generator of K goes to the smallest root
/// (in canonical order) of K's extension modulus inside L.
class Embedding {
 public:
  Embedding(const FieldTower& source, const FieldTower& target,
            std::uint64_t cap = kDefaultEnumerationCap);

  FieldElement operator()(const FieldElement& a) const;
  const FieldTower& source() const noexcept { return *source_; }
  const FieldTower& target() const noexcept { return *target_; }

 private:
  const FieldTower* source_;
  const FieldTower* target_;
  std::vector<FieldElement> powers_;  // images of w^j, j < m
};

FieldElement embed(const FieldElement& a, const FieldTower& super);

/// All elements of the field, each exactly once, in canonical order.
std::vector<FieldElement> enumerate_field(const FieldTower& k, std::uint64_t cap = kDefaultEnumerationCap);

/// {eps in K^x : eps^n = c}, sorted. The result is checked against the solvability
/// criterion c^((|K|-1)/gcd(n,|K|-1)) = 1 and has size 0 or gcd(n, |K|-1).
std::vector<FieldElement> solve_power_equation(std::uint64_t n, const FieldElement& c,
                                               std::uint64_t cap = kDefaultEnumerationCap);

/// Smallest monic irreducible polynomial of the given degree over F_q of `base`
/// (coefficients constant first, leading 1 included).
std::vector<FieldTower::BaseCoeff> smallest_irreducible(const FieldTower& base, unsigned degree);

}  // namespace coefchange
