#include "coefchange/poly.hpp"

#include <algorithm>

namespace coefchange {

Poly::Poly(const FieldTower& k, std::vector<FieldElement> coeffs) : tower_(&k), c_(std::move(coeffs)) {
  for (const auto& c : c_) {
    if (&c.tower() != tower_) throw TowerMismatch("polynomial coefficient from a different field");
  }
  normalize();
}

Poly Poly::constant(const FieldElement& c) { return Poly(c.tower(), {c}); }

Poly Poly::monomial(const FieldElement& c, int degree) {
  if (degree < 0) throw InvalidArgument("negative monomial degree");
  std::vector<FieldElement> v(static_cast<std::size_t>(degree) + 1, FieldElement::zero(c.tower()));
  v.back() = c;
  return Poly(c.tower(), std::move(v));
}

Poly Poly::variable(const FieldTower& k) { return monomial(FieldElement::one(k), 1); }

Poly Poly::from_ints(const FieldTower& k, const std::vector<std::int64_t>& coeffs) {
  std::vector<FieldElement> v;
  v.reserve(coeffs.size());
  for (auto c : coeffs) v.push_back(FieldElement::from_int(k, c));
  return Poly(k, std::move(v));
}

const FieldTower& Poly::tower() const {
  if (tower_ == nullptr) throw TowerMismatch("detached polynomial");
  return *tower_;
}

void Poly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void Poly::check_same(const Poly& o) const {
  if (tower_ == nullptr || tower_ != o.tower_) throw TowerMismatch();
}

FieldElement Poly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : FieldElement::zero(tower());
}

FieldElement Poly::lead() const { return c_.empty() ? FieldElement::zero(tower()) : c_.back(); }

int Poly::valuation() const noexcept {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return static_cast<int>(i);
  }
  return kZeroDegree;
}

Poly Poly::operator+(const Poly& o) const {
  check_same(o);
  Poly r(*tower_);
  const std::size_t n = std::max(c_.size(), o.c_.size());
  r.c_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= c_.size()) r.c_.push_back(o.c_[i]);
    else if (i >= o.c_.size()) r.c_.push_back(c_[i]);
    else r.c_.push_back(c_[i] + o.c_[i]);
  }
  r.normalize();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_same(o);
  Poly r(*tower_);
  if (c_.empty() || o.c_.empty()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, FieldElement::zero(*tower_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  r.normalize();
  return r;
}

Poly Poly::operator*(const FieldElement& s) const {
  Poly r = *this;
  for (auto& c : r.c_) c = c * s;
  r.normalize();
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  check_same(d);
  if (d.is_zero()) throw DivisionByZero();
  Poly rem = *this;
  Poly quo(*tower_);
  if (rem.degree() < d.degree()) return {quo, rem};
  const FieldElement inv = d.lead().inverse();
  const int dd = d.degree();
  quo.c_.assign(static_cast<std::size_t>(rem.degree() - dd) + 1, FieldElement::zero(*tower_));
  for (int k = rem.degree(); k >= dd; --k) {
    const FieldElement c = rem.c_[k] * inv;
    quo.c_[k - dd] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= dd; ++j) rem.c_[k - dd + j] -= c * d.c_[j];
  }
  rem.normalize();
  quo.normalize();
  return {quo, rem};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inverse();
}

Poly Poly::pow(unsigned n) const {
  Poly acc = constant(FieldElement::one(tower()));
  Poly base = *this;
  for (; n > 0; n >>= 1) {
    if (n & 1) acc = acc * base;
    if (n > 1) base = base * base;
  }
  return acc;
}

FieldElement Poly::eval(const FieldElement& x) const {
  FieldElement acc = FieldElement::zero(tower());
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::compose(const Poly& g) const {
  check_same(g);
  Poly acc(*tower_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * g + constant(c_[i]);
  return acc;
}

Poly Poly::frobenius(std::uint64_t e) const {
  Poly r = *this;
  for (auto& c : r.c_) c = c.frobenius(e);
  return r;
}

Poly Poly::reversed(int n) const {
  if (degree() > n) throw InvalidArgument("reversal length below polynomial degree");
  Poly r(tower());
  if (is_zero()) return r;
  r.c_.assign(static_cast<std::size_t>(n) + 1, FieldElement::zero(*tower_));
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[n - i] = c_[i];
  r.normalize();
  return r;
}

Poly Poly::map(const Embedding& emb) const {
  Poly r(emb.target());
  for (const auto& c : c_) r.c_.push_back(emb(c));
  r.normalize();
  return r;
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    std::string c = c_[i].to_string();
    const bool compound = c.find('+') != std::string::npos;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += c;
    } else {
      if (!c_[i].is_one()) out += compound ? "(" + c + ")*" : c + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

}  // namespace coefchange
