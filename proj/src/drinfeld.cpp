#include "coefchange/drinfeld.hpp"

#include <algorithm>
#include <set>

namespace coefchange {

namespace {

void check_comparable(const DrinfeldModule& a, const DrinfeldModule& b) {
  if (a.tower != b.tower) throw ShapeMismatch("modules live over different fields");
  if (a.ring != b.ring) throw ShapeMismatch("modules are over different rings");
  if (a.rank != b.rank) throw ShapeMismatch("modules have different ranks");
}

// q^i - 1 reduced into [1, order] so that eps^result = eps^(q^i - 1) on K^x
std::uint64_t frobenius_exponent(const FieldTower& k, std::size_t i) {
  const std::uint64_t order = k.size() - 1;
  std::uint64_t qi = 1 % order;
  for (std::size_t t = 0; t < i; ++t) qi = static_cast<std::uint64_t>((unsigned __int128)qi * k.q() % order);
  const std::uint64_t n = (qi + order - 1 % order) % order;
  return n == 0 ? order : n;
}

}  // namespace

DrinfeldModule DrinfeldModule::make(const SkewPoly& gen_image, RingTag ring) {
  DrinfeldModule m;
  m.tower = &gen_image.tower();
  m.ring = ring;
  m.gen_image = gen_image;
  m.rank = std::max(gen_image.degree(), 0);
  m.characteristic = gen_image.coeff(0);
  return m;
}

CoverMap::CoverMap(const Poly& p) {
  if (p.degree() < 1) throw InvalidArgument("cover polynomial must have degree at least 1");
  if (!p.lead().is_one()) throw InvalidArgument("cover polynomial must be monic");
  const FieldTower& fq = p.tower().base_field();
  std::vector<FieldElement> c;
  for (const auto& a : p.coeffs()) c.push_back(lift_constant(a, fq));
  p_ = Poly(fq, std::move(c));
}

Poly CoverMap::lifted(const FieldTower& k) const {
  std::vector<FieldElement> c;
  for (const auto& a : p_.coeffs()) c.push_back(lift_constant(a, k));
  return Poly(k, std::move(c));
}

bool CoverMap::is_identity() const { return p_ == Poly::variable(p_.tower()); }

VerificationReport verify_standard_form(const DrinfeldModule& M) {
  VerificationReport rep;
  if (M.tower == nullptr || !M.gen_image.attached()) {
    rep.add("field attached", false, "module has no coefficient field");
    return rep;
  }
  rep.add("coefficients in the module's field", &M.gen_image.tower() == M.tower &&
                                                     M.characteristic.attached() &&
                                                     &M.characteristic.tower() == M.tower);
  if (!rep.passed()) return rep;
  rep.add("rank is positive", M.rank >= 1, "rank " + std::to_string(M.rank));
  rep.add("degree equals rank", M.gen_image.degree() == M.rank,
          "degree " + (M.gen_image.is_zero() ? std::string("-inf") : std::to_string(M.gen_image.degree())) +
              ", rank " + std::to_string(M.rank));
  rep.add("leading coefficient is a unit", !M.gen_image.lead().is_zero());
  rep.add("constant coefficient equals characteristic", M.gen_image.coeff(0) == M.characteristic,
          "constant " + M.gen_image.coeff(0).to_string() + ", characteristic " + M.characteristic.to_string());
  return rep;
}

SkewPoly evaluate_at(const DrinfeldModule& M, const Poly& a) { return substitute(a, M.gen_image); }

DrinfeldModule restrict(const DrinfeldModule& Mp, const CoverMap& cover) {
  if (Mp.ring != RingTag::Aprime) throw ShapeMismatch("restriction expects a module over A'");
  DrinfeldModule m;
  m.tower = Mp.tower;
  m.ring = RingTag::A;
  m.gen_image = substitute(cover.poly(), Mp.gen_image);
  m.rank = cover.degree() * Mp.rank;
  m.characteristic = cover.lifted(*Mp.tower).eval(Mp.characteristic);
  return m;
}

std::vector<FieldElement> iso_solver(const DrinfeldModule& M1, const DrinfeldModule& M2) {
  check_comparable(M1, M2);
  const FieldTower& k = *M1.tower;
  const auto& a = M1.gen_image;
  const auto& b = M2.gen_image;
  // eps * phi1 = phi2 * eps, coefficient i: eps*d1_i = d2_i*eps^(q^i)
  std::optional<std::vector<FieldElement>> cand;
  const std::size_t len = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<std::size_t> constrained;
  for (std::size_t i = 0; i < len; ++i) {
    const FieldElement d1 = a.coeff(i), d2 = b.coeff(i);
    if (d1.is_zero() && d2.is_zero()) continue;
    if (d1.is_zero() || d2.is_zero()) return {};
    if (i == 0) {
      if (d1 != d2) return {};
      continue;
    }
    constrained.push_back(i);
    if (!cand) {
      cand = solve_power_equation(frobenius_exponent(k, i), d1 / d2, k.size());
    }
  }
  if (!cand) {
    std::vector<FieldElement> all;
    for (const auto& e : enumerate_field(k, k.size()))
      if (!e.is_zero()) all.push_back(e);
    return all;
  }
  std::vector<FieldElement> out;
  for (const auto& eps : *cand) {
    bool ok = true;
    for (auto i : constrained) {
      if (eps * a.coeff(i) != b.coeff(i) * eps.frobenius(i)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(eps);
  }
  return out;
}

std::vector<FieldElement> iso_oracle(const DrinfeldModule& M1, const DrinfeldModule& M2) {
  check_comparable(M1, M2);
  std::vector<FieldElement> out;
  for (const auto& eps : enumerate_field(*M1.tower, M1.tower->size())) {
    if (eps.is_zero()) continue;
    const SkewPoly e = SkewPoly::constant(eps);
    if (e * M1.gen_image == M2.gen_image * e) out.push_back(eps);
  }
  return out;
}

AutGroup aut_group(const DrinfeldModule& M) {
  AutGroup g;
  g.elements = iso_solver(M, M);
  const std::set<FieldElement> s(g.elements.begin(), g.elements.end());
  g.has_identity = s.count(FieldElement::one(*M.tower)) == 1;
  g.closed_under_mul = true;
  g.closed_under_inverse = true;
  for (const auto& x : g.elements) {
    if (!s.count(x.inverse())) g.closed_under_inverse = false;
    for (const auto& y : g.elements)
      if (!s.count(x * y)) g.closed_under_mul = false;
  }
  return g;
}

DrinfeldModule base_change(const DrinfeldModule& M, const Embedding& emb) {
  if (&emb.source() != M.tower) throw TowerMismatch("embedding source is not the module's field");
  DrinfeldModule m = M;
  m.tower = &emb.target();
  m.gen_image = M.gen_image.map(emb);
  m.characteristic = emb(M.characteristic);
  return m;
}

std::optional<unsigned> twist_min_degree(const DrinfeldModule& M1, const DrinfeldModule& M2, unsigned s_max,
                                         std::uint64_t cap) {
  check_comparable(M1, M2);
  for (unsigned s = 1; s <= s_max; ++s) {
    const FieldTower& l = M1.tower->extension(s, cap);
    Embedding emb(*M1.tower, l, cap);
    if (!iso_solver(base_change(M1, emb), base_change(M2, emb)).empty()) return s;
  }
  return std::nullopt;
}

}  // namespace coefchange
