#pragma once

#include <optional>
#include <vector>

#include "coefchange/ff.hpp"
#include "coefchange/poly.hpp"
#include "coefchange/report.hpp"
#include "coefchange/skew.hpp"

namespace coefchange {

/// Which polynomial ring the module is over: A = F_q[x] or A' = F_q[y].
enum class RingTag { A, Aprime };

/// A Drinfeld module in standard form over a field K: the image of the ring generator.
struct DrinfeldModule {
  const FieldTower* tower = nullptr;
  RingTag ring = RingTag::A;
  SkewPoly gen_image;
  int rank = 0;
  FieldElement characteristic;

  const FieldTower& field() const { return *tower; }
  /// Builds the module with characteristic read off the constant coefficient.
  static DrinfeldModule make(const SkewPoly& gen_image, RingTag ring = RingTag::A);
};

/// The Kummer-type cover x = p(y), p monic over F_q.
class CoverMap {
 public:
  /// p may be given over F_q or over any extension tower; coefficients must lie in F_q.
  explicit CoverMap(const Poly& p);

  /// p with coefficients in the F_q tower.
  const Poly& poly() const noexcept { return p_; }
  int degree() const noexcept { return p_.degree(); }
  /// p with coefficients placed in k (same F_q).
  Poly lifted(const FieldTower& k) const;
  bool is_identity() const;

 private:
  Poly p_;
};

VerificationReport verify_standard_form(const DrinfeldModule& M);

/// phi(a) for a in F_q[x] (a over F_q or over K with F_q coefficients).
SkewPoly evaluate_at(const DrinfeldModule& M, const Poly& a);

/// Restriction of coefficients: x acts as p(phi'(y)).
DrinfeldModule restrict(const DrinfeldModule& Mp, const CoverMap& cover);

/// All eps in K^x with eps*phi1(x) = phi2(x)*eps, sorted.
std::vector<FieldElement> iso_solver(const DrinfeldModule& M1, const DrinfeldModule& M2);
/// Exhaustive scan over K^x; independent check for iso_solver.
std::vector<FieldElement> iso_oracle(const DrinfeldModule& M1, const DrinfeldModule& M2);

struct AutGroup {
  std::vector<FieldElement> elements;
  bool has_identity = false;
  bool closed_under_mul = false;
  bool closed_under_inverse = false;
  bool certified() const { return has_identity && closed_under_mul && closed_under_inverse; }
};

AutGroup aut_group(const DrinfeldModule& M);

/// The module with all coefficients pushed through emb.
DrinfeldModule base_change(const DrinfeldModule& M, const Embedding& emb);

/// Smallest s <= s_max such that the modules become isomorphic over the degree-s extension.
std::optional<unsigned> twist_min_degree(const DrinfeldModule& M1, const DrinfeldModule& M2, unsigned s_max,
                                         std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace coefchange
