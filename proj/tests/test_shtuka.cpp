#include <gtest/gtest.h>

#include "coefchange/shtuka.hpp"

using namespace coefchange;

namespace {

const FieldTower& f3() { return FieldTower::prime_field(3); }
const FieldTower& f9() { return FieldTower::get(3, {0, 1}, {{1}, {0}, {1}}); }

CoverMap square(const FieldTower& k) { return CoverMap(Poly::from_ints(k.base_field(), {0, 0, 1})); }

// 1x1 right shtuka on C' with E = O, E' = O(inf'), J = 1 (pole at infinity), T = given
Shtuka line_shtuka(const Poly& t, const FieldElement& zero) {
  const FieldTower& k = t.tower();
  Shtuka S;
  S.tower = &k;
  S.rank = 1;
  S.dim = 1;
  S.zero = zero;
  S.split_E = {{0}};
  S.split_Eprime = {{1}};
  S.J = PolyMatrix::identity(k, 1);
  S.T = PolyMatrix::from_rows(k, {{t}});
  S.var = "y";
  return S;
}

}  // namespace

TEST(Shtuka, FromTauSquaredLadder) {
  auto phi = DrinfeldModule::make(SkewPoly(f3(), {FieldElement::zero(f3()), FieldElement::zero(f3()),
                                                  FieldElement::one(f3())}));
  auto L = from_drinfeld(phi);
  for (long i = 0; i < 4; ++i) {
    auto S = from_abelian_sheaf(L, i);
    auto rep = verify_shtuka(S);
    EXPECT_TRUE(rep.passed()) << rep.failures().front();
    EXPECT_EQ(S.T, PolyMatrix::from_ints(f3(), {{{}, {0, 1}}, {{1}, {}}}));
    EXPECT_EQ(S.split_Eprime, from_abelian_sheaf(L, i + 1).split_E);
  }
  auto bad = from_abelian_sheaf(L, 0);
  bad.T = PolyMatrix::from_ints(f3(), {{{}, {0, 1}}, {{}, {}}});
  EXPECT_FALSE(verify_shtuka(bad).passed());
}

TEST(Shtuka, AffinePoleAndZero) {
  for (const auto& beta : enumerate_field(f3()))
    for (const auto& xi : enumerate_field(f3())) {
      Shtuka S;
      S.tower = &f3();
      S.rank = 1;
      S.dim = 1;
      S.pole = beta;
      S.zero = xi;
      S.split_E = {{0}};
      S.split_Eprime = {{1}};
      S.J = PolyMatrix::from_rows(f3(), {{Poly(f3(), {-beta, FieldElement::one(f3())})}});
      S.T = PolyMatrix::from_rows(f3(), {{Poly(f3(), {-xi, FieldElement::one(f3())})}});
      EXPECT_TRUE(verify_shtuka(S).passed());
    }
}

TEST(Shtuka, PushforwardCounterexample) {
  auto y = Poly::variable(f3());
  auto plus = line_shtuka(y, FieldElement::zero(f3()));
  auto minus = line_shtuka(-y, FieldElement::zero(f3()));
  ASSERT_TRUE(verify_shtuka(plus).passed());
  auto pp = pushforward_shtuka(plus, square(f3()));
  auto pm = pushforward_shtuka(minus, square(f3()));
  EXPECT_EQ(pp.T, PolyMatrix::from_ints(f3(), {{{}, {0, 1}}, {{1}, {}}}));
  EXPECT_TRUE(verify_shtuka(pp).passed());
  EXPECT_TRUE(shtuka_iso_solver(plus, minus).empty());
  auto isos = shtuka_iso_solver(pp, pm);
  ASSERT_FALSE(isos.empty());
  const auto diag = PolyMatrix::from_ints(f3(), {{{1}, {}}, {{}, {-1}}});
  EXPECT_TRUE(check_shtuka_iso(pp, pm, {diag, diag}));
  auto emb = Embedding(f3(), f9());
  EXPECT_FALSE(shtuka_iso_solver(base_change(plus, emb), base_change(minus, emb)).empty());
  auto self = shtuka_iso_solver(pp, pp);
  const auto id = PolyMatrix::identity(f3(), 2);
  EXPECT_TRUE(std::any_of(self.begin(), self.end(), [&](const ShtukaIso& s) { return s.U == id && s.Uprime == id; }));
}

TEST(Shtuka, ZeroMovesUnderPushforward) {
  for (const FieldTower* k : {&f3(), &f9()}) {
    for (const auto& xi : enumerate_field(*k)) {
      auto S = line_shtuka(Poly(*k, {-xi, FieldElement::one(*k)}), xi);
      ASSERT_TRUE(verify_shtuka(S).passed());
      auto P = pushforward_shtuka(S, square(*k));
      EXPECT_EQ(P.zero, xi * xi);
      EXPECT_TRUE(verify_shtuka(P).passed());
      auto c = cokernel_lengths(P.T, P.split_E.degs, P.split_Eprime.degs);
      EXPECT_TRUE(supported_at(c.finite_divisors, xi * xi));
    }
  }
}

TEST(Shtuka, DeterminantIsNorm) {
  // p = y^2 + a y + b, T' = g0 + g1 y:  det of the pushforward = g0^2 - a g0 g1 + g1^2 (b - x)
  const auto& k = f9();
  auto els = enumerate_field(k);
  for (std::int64_t a = 0; a < 3; ++a)
    for (std::int64_t b = 0; b < 3; ++b)
      for (std::size_t i = 0; i < els.size(); i += 2)
        for (std::size_t j = 1; j < els.size(); j += 3) {
          const auto g0 = els[i], g1 = els[j];
          auto cover = CoverMap(Poly::from_ints(f3(), {b, a, 1}));
          auto pushed = push_matrix(PolyMatrix::from_rows(k, {{Poly(k, {g0, g1})}}), cover.lifted(k));
          const auto A = FieldElement::from_int(k, a), B = FieldElement::from_int(k, b);
          Poly norm(k, {g0 * g0 - A * g0 * g1 + g1 * g1 * B, -(g1 * g1)});
          const Poly d = pushed.det();
          EXPECT_TRUE(d == norm || d == -norm);
        }
}

TEST(Shtuka, LeftOrientation) {
  // left shtuka: J : E' -> sigma^*E, T : E' -> E, built by mirroring a right one
  auto y = Poly::variable(f3());
  Shtuka S = line_shtuka(y, FieldElement::zero(f3()));
  S.orientation = Orientation::left;
  S.split_E = {{1}};
  S.split_Eprime = {{0}};
  EXPECT_TRUE(verify_shtuka(S).passed());
  Shtuka S2 = S;
  S2.T = PolyMatrix::from_rows(f3(), {{-y}});
  EXPECT_TRUE(shtuka_iso_solver(S, S2).empty());
  EXPECT_FALSE(shtuka_iso_solver(S, S).empty());
}
