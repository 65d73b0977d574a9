#pragma once

#include <string>
#include <vector>

#include "coefchange/poly.hpp"

namespace coefchange {

/// Dense matrix over K[x], row-major.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(const FieldTower& k, std::size_t rows, std::size_t cols);

  static PolyMatrix identity(const FieldTower& k, std::size_t n);
  static PolyMatrix from_rows(const FieldTower& k, const std::vector<std::vector<Poly>>& rows);
  /// Entries given as integer coefficient lists, constant first.
  static PolyMatrix from_ints(const FieldTower& k, const std::vector<std::vector<std::vector<std::int64_t>>>& rows);

  const FieldTower& tower() const;
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Poly& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix operator-() const;
  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator*(const Poly& s) const;

  /// Entrywise coefficient Frobenius (sigma).
  PolyMatrix frobenius(std::uint64_t e = 1) const;
  PolyMatrix map(const Embedding& emb) const;
  PolyMatrix transpose() const;

  bool is_zero() const;
  /// Largest entry degree; kZeroDegree for the zero matrix.
  int max_degree() const;
  /// Determinant (fraction-free elimination).
  Poly det() const;

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  std::string to_string(const std::string& var = "x") const;

 private:
  const FieldTower* tower_ = nullptr;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> e_;
};

/// Invariant factors d_1 | d_2 | ... (monic, nonzero) and the rank over K(x).
struct SmithForm {
  std::vector<Poly> invariants;
  std::size_t rank = 0;
};

SmithForm smith_form(const PolyMatrix& m);

/// Entry (j, t) must have degree <= dst[j] - src[t]; returns the offending entries' description
/// or an empty string.
std::string degree_bound_violation(const PolyMatrix& m, const std::vector<int>& src, const std::vector<int>& dst);

/// Matrix of the same bundle map O(src) -> O(dst) on P^1 in the chart u = 1/x at infinity,
/// with respect to local generators x^src_t and x^dst_j: N_jt(u) = u^(dst_j - src_t) M_jt(1/u).
PolyMatrix infinity_chart(const PolyMatrix& m, const std::vector<int>& src, const std::vector<int>& dst);

/// Cokernel data of a bundle map between split bundles on P^1.
struct CokernelLengths {
  bool injective = false;
  /// dim_K of the cokernel on the affine chart (sum of degrees of invariant factors)
  int finite = 0;
  /// dim_K of the cokernel stalk at infinity (sum of u-orders of the chart invariant factors)
  int infinity = 0;
  std::vector<Poly> finite_divisors;
  std::vector<Poly> infinity_divisors;
  int total() const { return finite + infinity; }
};

CokernelLengths cokernel_lengths(const PolyMatrix& m, const std::vector<int>& src, const std::vector<int>& dst);

/// True iff every nonconstant polynomial in the list is a power of (x - root).
bool supported_at(const std::vector<Poly>& divisors, const FieldElement& root);

/// dim_K K[x]^r / M K[x]^r for a nonsingular square M, by linear algebra in (K[x]/det)^r.
/// Independent of the Smith form; used as an oracle.
int quotient_dimension(const PolyMatrix& m);

}  // namespace coefchange
