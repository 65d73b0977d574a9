#include "coefchange/skew.hpp"

#include <algorithm>

namespace coefchange {

SkewPoly::SkewPoly(const FieldTower& k, std::vector<FieldElement> coeffs) : tower_(&k), c_(std::move(coeffs)) {
  for (const auto& c : c_) {
    if (&c.tower() != tower_) throw TowerMismatch("skew coefficient from a different field");
  }
  normalize();
}

SkewPoly SkewPoly::constant(const FieldElement& c) { return SkewPoly(c.tower(), {c}); }

SkewPoly SkewPoly::monomial(const FieldElement& c, int i) {
  if (i < 0) throw InvalidArgument("negative tau exponent");
  std::vector<FieldElement> v(static_cast<std::size_t>(i) + 1, FieldElement::zero(c.tower()));
  v.back() = c;
  return SkewPoly(c.tower(), std::move(v));
}

const FieldTower& SkewPoly::tower() const {
  if (tower_ == nullptr) throw TowerMismatch("detached skew polynomial");
  return *tower_;
}

void SkewPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void SkewPoly::check_same(const SkewPoly& o) const {
  if (tower_ == nullptr || tower_ != o.tower_) throw TowerMismatch();
}

FieldElement SkewPoly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : FieldElement::zero(tower());
}

FieldElement SkewPoly::lead() const { return c_.empty() ? FieldElement::zero(tower()) : c_.back(); }

SkewPoly SkewPoly::operator+(const SkewPoly& o) const {
  check_same(o);
  SkewPoly r(*tower_);
  const std::size_t n = std::max(c_.size(), o.c_.size());
  for (std::size_t i = 0; i < n; ++i) r.c_.push_back(coeff(i) + o.coeff(i));
  r.normalize();
  return r;
}

SkewPoly SkewPoly::operator-(const SkewPoly& o) const { return *this + (-o); }

SkewPoly SkewPoly::operator-() const {
  SkewPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

SkewPoly SkewPoly::operator*(const SkewPoly& o) const {
  check_same(o);
  SkewPoly r(*tower_);
  if (c_.empty() || o.c_.empty()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, FieldElement::zero(*tower_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    // (a tau^i)(b tau^j) = a b^(q^i) tau^(i+j)
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      r.c_[i + j] += c_[i] * o.c_[j].frobenius(i);
    }
  }
  r.normalize();
  return r;
}

SkewPoly SkewPoly::map(const Embedding& emb) const {
  SkewPoly r(emb.target());
  for (const auto& c : c_) r.c_.push_back(emb(c));
  r.normalize();
  return r;
}

std::string SkewPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    std::string c = c_[i].to_string();
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += c;
      continue;
    }
    if (!c_[i].is_one()) out += (c.find('+') != std::string::npos ? "(" + c + ")" : c) + "*";
    out += "t";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

SkewPoly skew_mul(const SkewPoly& a, const SkewPoly& b) { return a * b; }

FieldElement evaluate_additive(const SkewPoly& P, const FieldElement& x) {
  const FieldTower& k = x.tower();
  if (P.is_zero()) return FieldElement::zero(k);
  if (&P.tower() != &k) return evaluate_additive(P.map(Embedding(P.tower(), k)), x);
  FieldElement acc = FieldElement::zero(k);
  FieldElement xp = x;
  for (std::size_t i = 0; i < P.coeffs().size(); ++i) {
    acc += P.coeffs()[i] * xp;
    xp = xp.frobenius();
  }
  return acc;
}

FieldElement lift_constant(const FieldElement& c, const FieldTower& k) {
  if (!c.tower().same_base(k)) throw TowerMismatch("constant from a different base field");
  if (!c.in_base_field()) throw NonCentralCoefficient();
  return FieldElement::from_base(k, c.coords()[0]);
}

SkewPoly substitute(const Poly& p, const SkewPoly& D) {
  const FieldTower& k = D.tower();
  SkewPoly acc(k);
  // Horner: ((c_n D + c_{n-1}) D + ...) ; scalars from F_q commute with tau
  for (std::size_t j = p.coeffs().size(); j-- > 0;) {
    acc = acc * D + SkewPoly::constant(lift_constant(p.coeffs()[j], k));
  }
  return acc;
}

SkewPoly conjugate(const SkewPoly& D, const FieldElement& eps) {
  if (eps.is_zero()) throw ZeroConjugator();
  const FieldTower& k = D.tower();
  if (&eps.tower() != &k) throw TowerMismatch();
  const FieldElement inv = eps.inverse();
  std::vector<FieldElement> out;
  FieldElement ep = eps;  // eps^(q^i)
  for (const auto& c : D.coeffs()) {
    out.push_back(c * ep * inv);
    ep = ep.frobenius();
  }
  return SkewPoly(k, std::move(out));
}

bool canonical_less(const SkewPoly& a, const SkewPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    const auto ia = a.coeffs()[i].index();
    const auto ib = b.coeffs()[i].index();
    if (ia != ib) return ia < ib;
  }
  return false;
}

}  // namespace coefchange
