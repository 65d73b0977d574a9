#include <gtest/gtest.h>

#include <set>

#include "coefchange/drinfeld.hpp"
#include "coefchange/extend.hpp"

using namespace coefchange;

namespace {

const FieldTower& f3() { return FieldTower::prime_field(3); }
const FieldTower& f2() { return FieldTower::prime_field(2); }
const FieldTower& f9() { return FieldTower::get(3, {0, 1}, {{1}, {0}, {1}}); }
const FieldTower& f4() { return FieldTower::get(2, {0, 1}, {{1}, {1}, {1}}); }

FieldElement el(const FieldTower& k, std::int64_t v) { return FieldElement::from_int(k, v); }

SkewPoly sp(const FieldTower& k, std::vector<std::int64_t> c) {
  std::vector<FieldElement> v;
  for (auto x : c) v.push_back(el(k, x));
  return SkewPoly(k, v);
}

CoverMap square(const FieldTower& k) { return CoverMap(Poly::from_ints(k.base_field(), {0, 0, 1})); }

// all skew polynomials of degree <= d over k
std::vector<SkewPoly> all_skew(const FieldTower& k, int d) {
  auto els = enumerate_field(k);
  std::vector<SkewPoly> out;
  std::uint64_t total = 1;
  for (int i = 0; i <= d; ++i) total *= els.size();
  for (std::uint64_t t = 0; t < total; ++t) {
    std::vector<FieldElement> v;
    std::uint64_t r = t;
    for (int i = 0; i <= d; ++i) {
      v.push_back(els[r % els.size()]);
      r /= els.size();
    }
    out.emplace_back(k, v);
  }
  return out;
}

}  // namespace

TEST(Skew, CommutationRule) {
  auto i = FieldElement::generator(f9());
  auto t = SkewPoly::tau(f9());
  EXPECT_EQ(t * SkewPoly::constant(i), SkewPoly::monomial(-i, 1));
  // (a t + b)^2 = a^(1+q) t^2 + a(b + b^q) t + b^2, hand expansion
  for (const auto& a : enumerate_field(f9())) {
    for (const auto& b : enumerate_field(f9())) {
      SkewPoly P(f9(), {b, a});
      SkewPoly want(f9(), {b * b, a * (b + b.frobenius()), a * a.frobenius()});
      EXPECT_EQ(P * P, want);
    }
  }
}

TEST(Skew, RingAxiomsExhaustive) {
  for (const FieldTower* k : {&f2(), &f3()}) {
    auto all = all_skew(*k, 2);
    // associativity on all triples of degree <= 1 is cubic in the set size; degree <= 2 over F_2
    auto small = (k == &f2()) ? all : all_skew(*k, 1);
    for (const auto& a : small)
      for (const auto& b : small)
        for (const auto& c : small) {
          EXPECT_EQ((a * b) * c, a * (b * c));
          EXPECT_EQ(a * (b + c), a * b + a * c);
        }
    for (const auto& a : all)
      for (const auto& b : all) {
        if (!a.is_zero() && !b.is_zero()) EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
        for (const auto& x : enumerate_field(*k))
          EXPECT_EQ(evaluate_additive(a * b, x), evaluate_additive(a, evaluate_additive(b, x)));
      }
  }
}

TEST(Skew, EvaluateAdditive) {
  auto i = FieldElement::generator(f9());
  EXPECT_EQ(evaluate_additive(SkewPoly::monomial(FieldElement::one(f9()), 2), i), i);
  EXPECT_EQ(evaluate_additive(SkewPoly(f9()), i), FieldElement::zero(f9()));
  EXPECT_EQ(evaluate_additive(SkewPoly::tau(f9()), i), -i);
}

TEST(Skew, SubstituteAndConjugate) {
  auto t = SkewPoly::tau(f3());
  auto y2 = Poly::from_ints(f3(), {0, 0, 1});
  EXPECT_EQ(substitute(y2, t), SkewPoly::monomial(el(f3(), 1), 2));
  EXPECT_EQ(substitute(y2, -t), SkewPoly::monomial(el(f3(), 1), 2));
  // non-central coefficient
  auto i = FieldElement::generator(f9());
  EXPECT_THROW(substitute(Poly(f9(), {i, FieldElement::one(f9())}), SkewPoly::tau(f9())), NonCentralCoefficient);
  // multiplicativity of substitution
  auto D = SkewPoly(f9(), {i, FieldElement::one(f9()), i});
  auto p = Poly::from_ints(f3(), {1, 2, 1});
  auto r = Poly::from_ints(f3(), {2, 0, 1, 1});
  EXPECT_EQ(substitute(p * r, D), substitute(p, D) * substitute(r, D));
  // conjugation
  auto aT = SkewPoly::monomial(FieldElement::generator(f9()) + FieldElement::one(f9()), 1);
  EXPECT_EQ(conjugate(aT, i), -aT);
  for (const auto& e : enumerate_field(f9())) {
    if (e.is_zero()) continue;
    EXPECT_EQ(conjugate(conjugate(D, e), e.inverse()), D);
    auto E = SkewPoly::constant(e);
    EXPECT_EQ(E * conjugate(D, e), D * E);
  }
  EXPECT_THROW(conjugate(D, FieldElement::zero(f9())), ZeroConjugator);
}

TEST(Drinfeld, StandardForm) {
  auto m = DrinfeldModule::make(sp(f3(), {0, 0, 1}));
  EXPECT_TRUE(verify_standard_form(m).passed());
  auto bad = m;
  bad.rank = 1;
  EXPECT_FALSE(verify_standard_form(bad).passed());
  auto bad2 = m;
  bad2.gen_image = sp(f3(), {1, 0, 1});
  EXPECT_FALSE(verify_standard_form(bad2).passed());
  EXPECT_EQ(evaluate_at(m, Poly::from_ints(f3(), {0, 0, 1})), sp(f3(), {0, 0, 0, 0, 1}));
  EXPECT_EQ(evaluate_at(m, Poly::from_ints(f3(), {1})), sp(f3(), {1}));
}

TEST(Drinfeld, RestrictionCounterexample) {
  auto plus = DrinfeldModule::make(sp(f3(), {0, 1}), RingTag::Aprime);
  auto minus = DrinfeldModule::make(sp(f3(), {0, -1}), RingTag::Aprime);
  auto r1 = restrict(plus, square(f3()));
  auto r2 = restrict(minus, square(f3()));
  EXPECT_EQ(r1.gen_image, sp(f3(), {0, 0, 1}));
  EXPECT_EQ(r2.gen_image, r1.gen_image);
  EXPECT_EQ(r1.rank, 2);
  EXPECT_TRUE(r1.characteristic.is_zero());
  EXPECT_TRUE(iso_solver(plus, minus).empty());
  auto emb = Embedding(f3(), f9());
  auto got = iso_solver(base_change(plus, emb), base_change(minus, emb));
  auto i = FieldElement::generator(f9());
  EXPECT_EQ(std::set<FieldElement>(got.begin(), got.end()), (std::set<FieldElement>{i, -i}));
  EXPECT_EQ(twist_min_degree(plus, minus, 3), 2u);
  EXPECT_EQ(twist_min_degree(plus, plus, 3), 1u);
  auto identity = CoverMap(Poly::from_ints(f3(), {0, 1}));
  EXPECT_EQ(restrict(plus, identity).gen_image, plus.gen_image);
}

TEST(Drinfeld, AutGroups) {
  auto m = DrinfeldModule::make(sp(f3(), {0, 0, 1}));
  auto g = aut_group(m);
  EXPECT_TRUE(g.certified());
  EXPECT_EQ(g.elements.size(), 2u);
  auto g9 = aut_group(base_change(m, Embedding(f3(), f9())));
  EXPECT_EQ(g9.elements.size(), 8u);
  EXPECT_EQ(aut_group(DrinfeldModule::make(sp(f3(), {0, 1}), RingTag::Aprime)).elements.size(), 2u);
}

TEST(Drinfeld, IsoSolverMatchesOracle) {
  for (const FieldTower* k : {&f4(), &f9(), &f3()}) {
    auto all = all_skew(*k, 2);
    std::vector<DrinfeldModule> mods;
    for (const auto& d : all)
      if (d.degree() == 2) mods.push_back(DrinfeldModule::make(d));
    for (std::size_t a = 0; a < mods.size(); a += 3)
      for (std::size_t b = 0; b < mods.size(); b += 5) EXPECT_EQ(iso_solver(mods[a], mods[b]), iso_oracle(mods[a], mods[b]));
  }
}

TEST(Extend, CounterexampleFiber) {
  auto phi = DrinfeldModule::make(sp(f3(), {0, 0, 1}));
  ExtensionProblem prob(phi, square(f3()));
  auto sols = enumerate_extensions(prob);
  ASSERT_EQ(sols.size(), 2u);
  EXPECT_EQ(sols[0].delta, sp(f3(), {0, 1}));
  EXPECT_EQ(sols[1].delta, sp(f3(), {0, -1}));
  EXPECT_EQ(sols, brute_oracle(prob));
  auto classes = extension_iso_classes(prob, sols);
  EXPECT_EQ(classes.size(), 2u);
  EXPECT_EQ(classes, pairwise_iso_partition(sols));

  auto prob9 = base_change(prob, Embedding(f3(), f9()));
  auto sols9 = enumerate_extensions(prob9);
  EXPECT_EQ(sols9.size(), 4u);
  for (const auto& s : sols9) {
    EXPECT_EQ(s.delta.degree(), 1);
    EXPECT_TRUE(s.delta.lead().pow(4).is_one());
  }
  EXPECT_EQ(extension_iso_classes(prob9, sols9).size(), 1u);

  auto rows = galois_merge_report(prob, 2);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].solutions, 2u);
  EXPECT_EQ(rows[0].classes, 2u);
  EXPECT_EQ(rows[1].solutions, 4u);
  EXPECT_EQ(rows[1].classes, 1u);
}

TEST(Extend, SmallCases) {
  auto bad = DrinfeldModule::make(sp(f3(), {0, 1, 1}));
  ExtensionProblem p1(bad, square(f3()));
  EXPECT_TRUE(enumerate_extensions(p1).empty());
  EXPECT_TRUE(brute_oracle(p1).empty());

  auto m = DrinfeldModule::make(sp(f3(), {2, 1, 1}));
  ExtensionProblem p2(m, CoverMap(Poly::from_ints(f3(), {0, 1})));
  auto s2 = enumerate_extensions(p2);
  ASSERT_EQ(s2.size(), 1u);
  EXPECT_EQ(s2[0].delta, m.gen_image);

  ExtensionProblem p3(DrinfeldModule::make(sp(f2(), {0, 0, 1})), square(f2()));
  auto rows = galois_merge_report(p3, 1);
  EXPECT_EQ(rows[0].solutions, 1u);
  EXPECT_EQ(rows[0].classes, 1u);

  EXPECT_THROW(ExtensionProblem(DrinfeldModule::make(sp(f3(), {0, 0, 0, 1})), square(f3())), NonDivisibleRank);
  SearchOptions tiny;
  tiny.cap = 5;
  EXPECT_THROW(enumerate_extensions(p1, tiny), CapExceeded);
}
