#include <gtest/gtest.h>

#include <set>

#include "coefchange/ff.hpp"
#include "coefchange/poly.hpp"

using namespace coefchange;

namespace {

const FieldTower& f9() { return FieldTower::get(3, {0, 1}, {{1}, {0}, {1}}); }
const FieldTower& f4() { return FieldTower::get(2, {0, 1}, {{1}, {1}, {1}}); }

}  // namespace

TEST(Field, PrimeArithmetic) {
  const auto& f3 = FieldTower::prime_field(3);
  auto two = FieldElement::from_int(f3, 2);
  EXPECT_EQ(two + two, FieldElement::one(f3));
  EXPECT_EQ(two * two, FieldElement::one(f3));
  EXPECT_EQ(FieldElement::from_int(f3, -1), two);
  EXPECT_THROW(FieldElement::zero(f3).inverse(), DivisionByZero);
}

TEST(Field, QuadraticExtension) {
  const auto& k = f9();
  auto i = FieldElement::generator(k);
  auto one = FieldElement::one(k);
  EXPECT_EQ(i * i, FieldElement::from_int(k, 2));
  EXPECT_EQ((one + i) * (one - i), FieldElement::from_int(k, 2));
  EXPECT_EQ(i.frobenius(), -i);
  EXPECT_EQ(i.frobenius(2), i);
  EXPECT_FALSE(i.in_base_field());
  EXPECT_TRUE(FieldElement::from_int(k, 2).in_base_field());
}

TEST(Field, EnumerationOrderAndIndex) {
  const auto& k = f9();
  auto all = enumerate_field(k);
  ASSERT_EQ(all.size(), 9u);
  for (std::uint64_t v = 0; v < all.size(); ++v) {
    EXPECT_EQ(all[v].index(), v);
    EXPECT_EQ(FieldElement::from_index(k, v), all[v]);
  }
  EXPECT_EQ(all[3], FieldElement::generator(k));
}

TEST(Field, FieldAxiomsBruteForce) {
  for (const FieldTower* k : {&f4(), &f9(), &FieldTower::prime_field(5)}) {
    auto all = enumerate_field(*k);
    for (const auto& a : all) {
      if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
      // Frobenius is additive and multiplicative, and fixes exactly F_q
      for (const auto& b : all) {
        EXPECT_EQ((a + b).frobenius(), a.frobenius() + b.frobenius());
        EXPECT_EQ((a * b).frobenius(), a.frobenius() * b.frobenius());
      }
      EXPECT_EQ(a.frobenius(), a.pow(k->q()));
      EXPECT_EQ(a.frobenius(k->degree()), a);
    }
  }
}

TEST(Field, PowerEquation) {
  const auto& f3 = FieldTower::prime_field(3);
  EXPECT_TRUE(solve_power_equation(2, FieldElement::from_int(f3, -1)).empty());
  const auto& k = f9();
  auto roots = solve_power_equation(2, FieldElement::from_int(k, -1));
  auto i = FieldElement::generator(k);
  std::set<FieldElement> got(roots.begin(), roots.end());
  EXPECT_EQ(got, (std::set<FieldElement>{i, -i}));
  EXPECT_THROW(solve_power_equation(2, FieldElement::zero(k)), ZeroArgument);
}

TEST(Field, PowerEquationMatchesBruteForce) {
  for (const FieldTower* k : {&f4(), &f9(), &FieldTower::prime_field(7)}) {
    auto all = enumerate_field(*k);
    for (std::uint64_t n = 1; n <= 10; ++n) {
      for (const auto& c : all) {
        if (c.is_zero()) continue;
        std::vector<FieldElement> expect;
        for (const auto& e : all)
          if (!e.is_zero() && e.pow(n) == c) expect.push_back(e);
        EXPECT_EQ(solve_power_equation(n, c), expect);
      }
    }
  }
}

TEST(Field, EmbeddingIsRingHom) {
  const auto& k = f4();
  const auto& l = k.extension(2);
  EXPECT_EQ(l.size(), 16u);
  Embedding emb(k, l);
  auto all = enumerate_field(k);
  for (const auto& a : all) {
    for (const auto& b : all) {
      EXPECT_EQ(emb(a + b), emb(a) + emb(b));
      EXPECT_EQ(emb(a * b), emb(a) * emb(b));
    }
  }
  EXPECT_THROW(Embedding(l, f9()), NoEmbedding);
}

TEST(Field, ReducibleModulusRejected) {
  EXPECT_THROW(FieldTower::get(3, {0, 1}, {{2}, {0}, {1}}), InvalidArgument);  // w^2 - 1
  EXPECT_THROW(FieldTower::get(4, {0, 1}, {{0}, {1}}), InvalidArgument);
}

TEST(Poly, DivisionAndGcd) {
  const auto& f5 = FieldTower::prime_field(5);
  auto a = Poly::from_ints(f5, {1, 2, 3, 4});
  auto b = Poly::from_ints(f5, {3, 0, 1});
  auto [q, r] = a.divmod(b);
  EXPECT_EQ(q * b + r, a);
  EXPECT_LT(r.degree(), b.degree());
  auto g = Poly::from_ints(f5, {1, 1});
  EXPECT_EQ(gcd(a * g, b * g), gcd(a, b) * g);
  EXPECT_EQ(Poly(f5).degree(), kZeroDegree);
}
