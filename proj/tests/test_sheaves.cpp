#include <gtest/gtest.h>

#include <random>

#include "coefchange/sheaves.hpp"

using namespace coefchange;

namespace {

const FieldTower& f2() { return FieldTower::prime_field(2); }
const FieldTower& f3() { return FieldTower::prime_field(3); }
const FieldTower& f9() { return FieldTower::get(3, {0, 1}, {{1}, {0}, {1}}); }

FieldElement el(const FieldTower& k, std::int64_t v) { return FieldElement::from_int(k, v); }

CoverMap square(const FieldTower& k) { return CoverMap(Poly::from_ints(k.base_field(), {0, 0, 1})); }

// The rank-2 ladder with F_i = O(floor((i+1)/2)) + O(floor(i/2)), Pi = 1, tau = [[0,x],[1,0]].
AbelianSheafLadder tau_squared_ladder(const FieldTower& k) {
  AbelianSheafLadder L;
  L.tower = &k;
  L.rank = 2;
  L.dim = 1;
  L.period = 2;
  L.twist = 1;
  L.characteristic = FieldElement::zero(k);
  const auto tau = PolyMatrix::from_ints(k, {{{}, {0, 1}}, {{1}, {}}});
  L.levels.push_back({{{0, 0}}, PolyMatrix::identity(k, 2), tau});
  L.levels.push_back({{{1, 0}}, PolyMatrix::identity(k, 2), tau});
  return L;
}

// rank-1 ladder on C' with F'_i = O((i+1) inf'), tau' = sign * y
AbelianSheafLadder line_ladder(const FieldTower& k, int sign) {
  AbelianSheafLadder L;
  L.tower = &k;
  L.rank = 1;
  L.dim = 1;
  L.period = 1;
  L.twist = 1;
  L.characteristic = FieldElement::zero(k);
  L.var = "y";
  L.levels.push_back({{{1}}, PolyMatrix::identity(k, 1), PolyMatrix::from_ints(k, {{{0, sign}}})});
  return L;
}

// exhaustive search for ladder isomorphisms with all coefficients enumerated
std::size_t brute_iso_count(const AbelianSheafLadder& L1, const AbelianSheafLadder& L2) {
  UnknownMatrices unk(L1.field());
  for (long i = 0; i < L1.period; ++i) unk.add_bundle_map(L1.split_at(i).degs, L2.split_at(i).degs);
  const std::uint32_t p = L1.field().characteristic();
  const std::size_t n = unk.unknown_count();
  FpRow v(n, 0);
  std::size_t count = 0;
  for (;;) {
    LadderIso iso{unk.assemble(v)};
    if (check_ladder_iso(L1, L2, iso)) ++count;
    std::size_t b = 0;
    while (b < n && ++v[b] == p) v[b++] = 0;
    if (b == n) break;
  }
  return count;
}

}  // namespace

TEST(Sheaves, TauSquaredLadderVerifies) {
  auto L = tau_squared_ladder(f3());
  auto rep = verify_abelian_sheaf(L);
  EXPECT_TRUE(rep.passed()) << rep.failures().front();
  auto bad = L;
  for (auto& lv : bad.levels) lv.tau = PolyMatrix::from_ints(f3(), {{{}, {0, 1}}, {{}, {}}});
  EXPECT_FALSE(verify_abelian_sheaf(bad).passed());
  auto line = line_ladder(f3(), 1);
  EXPECT_TRUE(verify_abelian_sheaf(line).passed());
}

TEST(Sheaves, FromDrinfeld) {
  auto phi = DrinfeldModule::make(SkewPoly(f3(), {el(f3(), 0), el(f3(), 0), el(f3(), 1)}));
  auto L = from_drinfeld(phi);
  EXPECT_EQ(L.tau_at(0), PolyMatrix::from_ints(f3(), {{{}, {0, 1}}, {{1}, {}}}));
  EXPECT_EQ(L.split_at(0).degs, (std::vector<int>{0, 0}));
  EXPECT_EQ(L.split_at(1).degs, (std::vector<int>{1, 0}));
  EXPECT_EQ(L.split_at(2).degs, (std::vector<int>{1, 1}));
  EXPECT_TRUE(verify_abelian_sheaf(L).passed());
  auto lin = DrinfeldModule::make(SkewPoly(f3(), {el(f3(), 2), el(f3(), 1)}));
  auto L1 = from_drinfeld(lin);
  EXPECT_EQ(L1.tau_at(0), PolyMatrix::from_ints(f3(), {{{1, 1}}}));  // x - 2
  EXPECT_TRUE(verify_abelian_sheaf(L1).passed());
}

TEST(Sheaves, PushforwardCounterexample) {
  auto plus = line_ladder(f3(), 1), minus = line_ladder(f3(), -1);
  ASSERT_TRUE(verify_abelian_sheaf(plus).passed());
  auto pp = pushforward(plus, square(f3()));
  auto pm = pushforward(minus, square(f3()));
  EXPECT_TRUE(verify_abelian_sheaf(pp).passed());
  EXPECT_TRUE(verify_abelian_sheaf(pm).passed());
  EXPECT_EQ(pp.tau_at(0), PolyMatrix::from_ints(f3(), {{{}, {0, 1}}, {{1}, {}}}));
  EXPECT_EQ(pm.tau_at(0), PolyMatrix::from_ints(f3(), {{{}, {0, -1}}, {{-1}, {}}}));
  auto target = tau_squared_ladder(f3());
  for (long i = 0; i < 4; ++i) EXPECT_EQ(pp.split_at(i), target.split_at(i));
  EXPECT_FALSE(semilinear_iso_solver(pp, target).empty());

  EXPECT_TRUE(semilinear_iso_solver(plus, minus).empty());
  auto emb = Embedding(f3(), f9());
  EXPECT_FALSE(semilinear_iso_solver(base_change(plus, emb), base_change(minus, emb)).empty());

  auto isos = semilinear_iso_solver(pp, pm);
  ASSERT_FALSE(isos.empty());
  const auto diag = PolyMatrix::from_ints(f3(), {{{1}, {}}, {{}, {-1}}});
  LadderIso d{{diag, diag}};
  EXPECT_TRUE(check_ladder_iso(pp, pm, d));
  bool found = false;
  for (const auto& iso : isos) {
    EXPECT_TRUE(check_ladder_iso(pp, pm, iso));
    found = found || iso.U == d.U;
  }
  EXPECT_TRUE(found);
}

TEST(Sheaves, SolverMatchesBruteForce) {
  auto target = tau_squared_ladder(f3());
  auto pm = pushforward(line_ladder(f3(), -1), square(f3()));
  EXPECT_EQ(semilinear_iso_solver(target, pm).size(), brute_iso_count(target, pm));
  EXPECT_EQ(semilinear_iso_solver(target, target).size(), brute_iso_count(target, target));
  for (int a : {1, -1})
    for (int b : {1, -1})
      EXPECT_EQ(semilinear_iso_solver(line_ladder(f3(), a), line_ladder(f3(), b)).size(),
                brute_iso_count(line_ladder(f3(), a), line_ladder(f3(), b)));
  auto L2 = tau_squared_ladder(f2());
  EXPECT_EQ(semilinear_iso_solver(L2, L2).size(), brute_iso_count(L2, L2));
}

TEST(Sheaves, ModuleStructures) {
  auto L = tau_squared_ladder(f3());
  auto s = enumerate_sheaf_module_structures(L, square(f3()));
  ASSERT_EQ(s.size(), 2u);
  const auto tau = L.tau_at(0);
  for (const auto& st : s) {
    EXPECT_TRUE(check_module_structure(L, square(f3()), st));
    EXPECT_TRUE(st.Y[0] == tau || st.Y[0] == -tau);
  }
  auto id = enumerate_sheaf_module_structures(L, CoverMap(Poly::from_ints(f3(), {0, 1})));
  ASSERT_EQ(id.size(), 1u);
  EXPECT_EQ(id[0].Y[0], PolyMatrix::identity(f3(), 2) * Poly::variable(f3()));
  EXPECT_TRUE(structure_iso_solver(L, s[0], s[1]).empty());

  auto L9 = base_change(L, Embedding(f3(), f9()));
  auto s9 = enumerate_sheaf_module_structures(L9, square(f9()));
  EXPECT_EQ(s9.size(), 4u);
  // the two structures defined over F_3 become isomorphic over F_9
  const auto emb = Embedding(f3(), f9());
  SheafModuleStructure a{{s[0].Y[0].map(emb), s[0].Y[1].map(emb)}};
  SheafModuleStructure b{{s[1].Y[0].map(emb), s[1].Y[1].map(emb)}};
  EXPECT_FALSE(structure_iso_solver(L9, a, b).empty());
  EXPECT_THROW(enumerate_sheaf_module_structures(from_drinfeld(DrinfeldModule::make(SkewPoly::tau(f3()))), square(f3())),
               NonDivisibleRank);
}

TEST(Sheaves, TwoCommutativeSquare) {
  // from_drinfeld(restrict M') vs pushforward(from_drinfeld M') shifted by (n-1) r'
  std::mt19937 rng(7);
  for (const FieldTower* k : {&f2(), &f3(), &f9()}) {
    auto els = enumerate_field(*k);
    for (int trial = 0; trial < 4; ++trial) {
      FieldElement a0 = els[rng() % els.size()];
      FieldElement a1 = els[1 + rng() % (els.size() - 1)];
      auto Mp = DrinfeldModule::make(SkewPoly(*k, {a0, a1}), RingTag::Aprime);
      auto cover = CoverMap(Poly::from_ints(k->base_field(), {static_cast<std::int64_t>(rng() % 2), 1, 1}));
      auto lhs = from_drinfeld(restrict(Mp, cover));
      auto rhs = shift_ladder(pushforward(from_drinfeld(Mp), cover), cover.degree() - 1);
      ASSERT_TRUE(verify_abelian_sheaf(rhs).passed());
      SemilinearOptions opt;
      opt.limit = 1;
      auto isos = semilinear_iso_solver(lhs, rhs, opt);
      ASSERT_FALSE(isos.empty());
      EXPECT_TRUE(check_ladder_iso(lhs, rhs, isos[0]));
    }
  }
}

TEST(Sheaves, LengthEngineMatchesQuotientOracle) {
  std::mt19937 rng(11);
  for (const FieldTower* k : {&f2(), &f3()}) {
    int done = 0;
    while (done < 50) {
      PolyMatrix m(*k, 2, 2);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          std::vector<std::int64_t> c(1 + rng() % 4);
          for (auto& x : c) x = static_cast<std::int64_t>(rng() % k->size());
          m(i, j) = Poly::from_ints(*k, c);
        }
      if (m.det().is_zero()) continue;
      auto sm = smith_form(m);
      int len = 0;
      for (const auto& d : sm.invariants) len += d.degree();
      EXPECT_EQ(len, quotient_dimension(m));
      EXPECT_EQ(len, m.det().degree());
      ++done;
    }
  }
}
