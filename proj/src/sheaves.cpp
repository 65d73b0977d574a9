#include "coefchange/sheaves.hpp"

#include <numeric>

namespace coefchange {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long mod(long a, long b) { return a - b * floor_div(a, b); }

// p(Y) for a square matrix Y and p with coefficients in K
PolyMatrix eval_matrix(const Poly& p, const PolyMatrix& Y) {
  const FieldTower& k = Y.tower();
  PolyMatrix acc(k, Y.rows(), Y.cols());
  const PolyMatrix id = PolyMatrix::identity(k, Y.rows());
  for (std::size_t j = p.coeffs().size(); j-- > 0;) acc = acc * Y + id * Poly::constant(p.coeffs()[j]);
  return acc;
}

void require_same_shape(const AbelianSheafLadder& a, const AbelianSheafLadder& b) {
  if (a.tower != b.tower) throw ShapeMismatch("ladders live over different fields");
  if (a.rank != b.rank || a.dim != b.dim || a.period != b.period || a.twist != b.twist)
    throw ShapeMismatch("ladders differ in rank, dimension, period or twist");
  if (a.characteristic != b.characteristic) throw ShapeMismatch("ladders have different characteristics");
}

}  // namespace

SplittingType SplittingType::shifted(int k) const {
  SplittingType s = *this;
  for (auto& d : s.degs) d += k;
  return s;
}

int SplittingType::total() const { return std::accumulate(degs.begin(), degs.end(), 0); }

SplittingType AbelianSheafLadder::split_at(long i) const {
  const long l = period;
  return levels.at(static_cast<std::size_t>(mod(i, l))).split.shifted(static_cast<int>(twist * floor_div(i, l)));
}

const PolyMatrix& AbelianSheafLadder::pi_at(long i) const {
  return levels.at(static_cast<std::size_t>(mod(i, period))).pi;
}

const PolyMatrix& AbelianSheafLadder::tau_at(long i) const {
  return levels.at(static_cast<std::size_t>(mod(i, period))).tau;
}

VerificationReport verify_abelian_sheaf(const AbelianSheafLadder& L) {
  VerificationReport rep;
  const std::size_t r = static_cast<std::size_t>(std::max(L.rank, 0));
  bool shape = L.tower != nullptr && L.rank >= 1 && L.period >= 1 &&
               L.levels.size() == static_cast<std::size_t>(L.period) && L.characteristic.attached() &&
               &L.characteristic.tower() == L.tower;
  for (const auto& lv : L.levels) {
    shape = shape && lv.split.degs.size() == r && lv.pi.rows() == r && lv.pi.cols() == r && lv.tau.rows() == r &&
            lv.tau.cols() == r && &lv.pi.tower() == L.tower && &lv.tau.tower() == L.tower;
  }
  rep.add("shape", shape, "levels must match the period and hold rank x rank matrices over the ladder's field");
  if (!shape) return rep;

  rep.add("twist/period equals dim/rank in lowest terms",
          L.dim >= 1 && static_cast<long>(L.twist) * L.rank == static_cast<long>(L.dim) * L.period &&
              std::gcd(L.twist, L.period) == 1,
          std::to_string(L.twist) + "/" + std::to_string(L.period) + " vs " + std::to_string(L.dim) + "/" +
              std::to_string(L.rank));

  const auto id = PolyMatrix::identity(L.field(), r);
  for (long i = 0; i < L.period; ++i) {
    const std::string lvl = "level " + std::to_string(i) + ": ";
    const auto src = L.split_at(i).degs, dst = L.split_at(i + 1).degs;
    const std::string pb = degree_bound_violation(L.pi_at(i), src, dst);
    const std::string tb = degree_bound_violation(L.tau_at(i), src, dst);
    rep.add(lvl + "Pi is a bundle map", pb.empty(), pb);
    rep.add(lvl + "tau is a bundle map", tb.empty(), tb);

    rep.add(lvl + "ladder square commutes (Pi_{i+1} tau_i = tau_{i+1} sigma(Pi_i))",
            L.pi_at(i + 1) * L.tau_at(i) == L.tau_at(i + 1) * L.pi_at(i).frobenius());

    PolyMatrix comp = id;
    for (long t = 0; t < L.period; ++t) comp = L.pi_at(i + t) * comp;
    rep.add(lvl + "periodicity (Pi composite over one period is the identity)", comp == id,
            "composite " + comp.to_string(L.var));

    if (!pb.empty() || !tb.empty()) continue;
    const auto cp = cokernel_lengths(L.pi_at(i), src, dst);
    rep.add(lvl + "coker Pi has length dim", cp.injective && cp.total() == L.dim,
            cp.injective ? "length " + std::to_string(cp.finite) + " + " + std::to_string(cp.infinity) + " at infinity"
                         : "Pi is not injective");
    const auto ct = cokernel_lengths(L.tau_at(i), src, dst);
    const bool ok = ct.injective && ct.finite == L.dim && ct.infinity == 0 &&
                    supported_at(ct.finite_divisors, L.characteristic);
    std::string detail = "tau is not injective";
    if (ct.injective) {
      detail = "finite length " + std::to_string(ct.finite) + ", infinity length " + std::to_string(ct.infinity) +
               ", divisors";
      for (const auto& d : ct.finite_divisors) detail += " " + d.to_string(L.var);
    }
    rep.add(lvl + "coker tau has length dim, supported at the characteristic", ok, detail);
  }
  return rep;
}

AbelianSheafLadder from_drinfeld(const DrinfeldModule& M) {
  const auto rep = verify_standard_form(M);
  if (!rep.passed()) throw InvalidArgument("module is not in standard form: " + rep.failures().front());
  const FieldTower& k = M.field();
  const int r = M.rank;
  AbelianSheafLadder L;
  L.tower = &k;
  L.rank = r;
  L.dim = 1;
  L.period = r;
  L.twist = 1;
  L.characteristic = M.characteristic;
  L.var = M.ring == RingTag::Aprime ? "y" : "x";

  const FieldElement inv = M.gen_image.lead().inverse();
  PolyMatrix tau(k, r, r);
  for (int j = 0; j + 1 < r; ++j) tau(j + 1, j) = Poly::constant(FieldElement::one(k));
  // tau(e_{r-1}) = lead^-1 (x e_0 - sum_{i<r} delta_i e_i)
  tau(0, r - 1) = Poly(k, {-M.gen_image.coeff(0) * inv, inv});
  for (int i = 1; i < r; ++i) tau(i, r - 1) = Poly::constant(-M.gen_image.coeff(i) * inv);

  for (int i = 0; i < r; ++i) {
    SplittingType s;
    for (int j = 0; j < r; ++j) s.degs.push_back(static_cast<int>(floor_div(i + r - 1 - j, r)));
    L.levels.push_back({s, PolyMatrix::identity(k, r), tau});
  }
  return L;
}

PolyMatrix push_matrix(const PolyMatrix& a, const Poly& p) {
  const FieldTower& k = a.tower();
  const int n = p.degree();
  const std::size_t R = a.rows(), C = a.cols();
  PolyMatrix out(k, R * n, C * n);
  for (int t = 0; t < n; ++t) {
    const Poly yt = Poly::monomial(FieldElement::one(k), t);
    for (std::size_t j = 0; j < C; ++j)
      for (std::size_t jp = 0; jp < R; ++jp) {
        // a(jp, j) y^t = sum_s y^s c_s(p(y))
        Poly f = a(jp, j) * yt;
        std::vector<std::vector<FieldElement>> c(n);
        while (!f.is_zero()) {
          auto [q, rem] = f.divmod(p);
          for (int s = 0; s < n; ++s) c[s].push_back(rem.coeff(s));
          f = std::move(q);
        }
        for (int s = 0; s < n; ++s) out(s * R + jp, t * C + j) = Poly(k, c[s]);
      }
  }
  return out;
}

SplittingType push_split(const SplittingType& s, int n) {
  SplittingType out;
  for (int t = 0; t < n; ++t)
    for (int m : s.degs) out.degs.push_back(static_cast<int>(floor_div(m - t, n)));
  return out;
}

AbelianSheafLadder pushforward(const AbelianSheafLadder& Lp, const CoverMap& cover) {
  const FieldTower& k = Lp.field();
  const int n = cover.degree();
  const Poly p = cover.lifted(k);
  AbelianSheafLadder L;
  L.tower = &k;
  L.rank = n * Lp.rank;
  L.dim = Lp.dim;
  const int g = std::gcd(L.dim, L.rank);
  L.twist = L.dim / g;
  L.period = L.rank / g;
  L.characteristic = p.eval(Lp.characteristic);
  L.var = "x";
  for (long i = 0; i < L.period; ++i) {
    L.levels.push_back({push_split(Lp.split_at(i), n), push_matrix(Lp.pi_at(i), p), push_matrix(Lp.tau_at(i), p)});
  }
  return L;
}

AbelianSheafLadder shift_ladder(const AbelianSheafLadder& L, long s) {
  AbelianSheafLadder out = L;
  out.levels.clear();
  for (long i = 0; i < L.period; ++i) out.levels.push_back({L.split_at(i + s), L.pi_at(i + s), L.tau_at(i + s)});
  return out;
}

AbelianSheafLadder base_change(const AbelianSheafLadder& L, const Embedding& emb) {
  if (&emb.source() != L.tower) throw TowerMismatch("embedding source is not the ladder's field");
  AbelianSheafLadder out = L;
  out.tower = &emb.target();
  out.characteristic = emb(L.characteristic);
  for (auto& lv : out.levels) {
    lv.pi = lv.pi.map(emb);
    lv.tau = lv.tau.map(emb);
  }
  return out;
}

namespace {

std::vector<PolyMatrix> iso_residual(const AbelianSheafLadder& L1, const AbelianSheafLadder& L2,
                                     const std::vector<PolyMatrix>& U) {
  std::vector<PolyMatrix> res;
  const long l = L1.period;
  for (long i = 0; i < l; ++i) {
    const PolyMatrix& Ui = U[i];
    const PolyMatrix& Un = U[(i + 1) % l];
    res.push_back(Un * L1.pi_at(i) - L2.pi_at(i) * Ui);
    res.push_back(Un * L1.tau_at(i) - L2.tau_at(i) * Ui.frobenius());
  }
  return res;
}

bool all_zero(const std::vector<PolyMatrix>& ms) {
  for (const auto& m : ms)
    if (!m.is_zero()) return false;
  return true;
}

bool all_unimodular(const std::vector<PolyMatrix>& ms) {
  for (const auto& m : ms)
    if (!unimodular(m)) return false;
  return true;
}

}  // namespace

bool check_ladder_iso(const AbelianSheafLadder& L1, const AbelianSheafLadder& L2, const LadderIso& iso) {
  if (iso.U.size() != static_cast<std::size_t>(L1.period)) return false;
  for (long i = 0; i < L1.period; ++i) {
    if (!degree_bound_violation(iso.U[i], L1.split_at(i).degs, L2.split_at(i).degs).empty()) return false;
    if (L1.split_at(i).total() != L2.split_at(i).total()) return false;
  }
  return all_zero(iso_residual(L1, L2, iso.U)) && all_unimodular(iso.U);
}

std::vector<LadderIso> semilinear_iso_solver(const AbelianSheafLadder& L1, const AbelianSheafLadder& L2,
                                             const SemilinearOptions& opt) {
  require_same_shape(L1, L2);
  // a bundle isomorphism preserves the degree
  for (long i = 0; i < L1.period; ++i)
    if (L1.split_at(i).total() != L2.split_at(i).total()) return {};
  UnknownMatrices unk(L1.field());
  for (long i = 0; i < L1.period; ++i) unk.add_bundle_map(L1.split_at(i).degs, L2.split_at(i).degs);
  auto res = solve_semilinear(
      unk, [&](const std::vector<PolyMatrix>& U) { return iso_residual(L1, L2, U); }, all_unimodular, opt);
  std::vector<LadderIso> out;
  for (auto& s : res.solutions) out.push_back({std::move(s)});
  return out;
}

namespace {

std::vector<PolyMatrix> structure_residual(const AbelianSheafLadder& L, const std::vector<PolyMatrix>& Y) {
  std::vector<PolyMatrix> res;
  const long l = L.period;
  for (long i = 0; i < l; ++i) {
    const PolyMatrix& Yn = Y[(i + 1) % l];
    res.push_back(Yn * L.pi_at(i) - L.pi_at(i) * Y[i]);
    res.push_back(Yn * L.tau_at(i) - L.tau_at(i) * Y[i].frobenius());
  }
  return res;
}

bool structure_nonlinear_ok(const AbelianSheafLadder& L, const Poly& p, const std::vector<PolyMatrix>& Y) {
  const FieldTower& k = L.field();
  const std::size_t r = static_cast<std::size_t>(L.rank);
  const PolyMatrix xI = PolyMatrix::identity(k, r) * Poly::variable(k);
  for (long i = 0; i < L.period; ++i) {
    if (eval_matrix(p, Y[i]) != xI) return false;
    // y^t has a pole of order t < n at the point above infinity, so it maps F_i into F_i(inf)
    const auto src = L.split_at(i).degs, dst = L.split_at(i).shifted(1).degs;
    PolyMatrix pw = Y[i];
    for (int t = 2; t < p.degree(); ++t) {
      pw = pw * Y[i];
      if (!degree_bound_violation(pw, src, dst).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool check_module_structure(const AbelianSheafLadder& L, const CoverMap& cover, const SheafModuleStructure& s) {
  if (s.Y.size() != static_cast<std::size_t>(L.period)) return false;
  for (long i = 0; i < L.period; ++i)
    if (!degree_bound_violation(s.Y[i], L.split_at(i).degs, L.split_at(i).shifted(1).degs).empty()) return false;
  return all_zero(structure_residual(L, s.Y)) && structure_nonlinear_ok(L, cover.lifted(L.field()), s.Y);
}

std::vector<SheafModuleStructure> enumerate_sheaf_module_structures(const AbelianSheafLadder& L,
                                                                    const CoverMap& cover,
                                                                    const SemilinearOptions& opt) {
  const int n = cover.degree();
  if (L.rank % n != 0)
    throw NonDivisibleRank("rank " + std::to_string(L.rank) + " is not divisible by cover degree " +
                           std::to_string(n));
  const Poly p = cover.lifted(L.field());
  UnknownMatrices unk(L.field());
  for (long i = 0; i < L.period; ++i) unk.add_bundle_map(L.split_at(i).degs, L.split_at(i).shifted(1).degs);
  auto res = solve_semilinear(
      unk, [&](const std::vector<PolyMatrix>& Y) { return structure_residual(L, Y); },
      [&](const std::vector<PolyMatrix>& Y) { return structure_nonlinear_ok(L, p, Y); }, opt);
  std::vector<SheafModuleStructure> out;
  for (auto& s : res.solutions) out.push_back({std::move(s)});
  return out;
}

std::vector<LadderIso> structure_iso_solver(const AbelianSheafLadder& L, const SheafModuleStructure& s1,
                                            const SheafModuleStructure& s2, const SemilinearOptions& opt) {
  const long l = L.period;
  if (s1.Y.size() != static_cast<std::size_t>(l) || s2.Y.size() != static_cast<std::size_t>(l))
    throw ShapeMismatch("module structure does not match the ladder period");
  UnknownMatrices unk(L.field());
  for (long i = 0; i < l; ++i) unk.add_bundle_map(L.split_at(i).degs, L.split_at(i).degs);
  auto residual = [&](const std::vector<PolyMatrix>& U) {
    auto res = iso_residual(L, L, U);
    for (long i = 0; i < l; ++i) res.push_back(U[i] * s1.Y[i] - s2.Y[i] * U[i]);
    return res;
  };
  auto r = solve_semilinear(unk, residual, all_unimodular, opt);
  std::vector<LadderIso> out;
  for (auto& s : r.solutions) out.push_back({std::move(s)});
  return out;
}

}  // namespace coefchange
