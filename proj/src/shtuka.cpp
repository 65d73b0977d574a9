#include "coefchange/shtuka.hpp"

namespace coefchange {

namespace {

std::string point_name(const std::optional<FieldElement>& p) { return p ? p->to_string() : std::string("inf"); }

// coker of m supported at `where` (nullopt: infinity) with total length d
void check_support(VerificationReport& rep, const std::string& name, const PolyMatrix& m, const SplittingType& src,
                   const SplittingType& dst, const std::optional<FieldElement>& where, int d, const std::string& var) {
  const std::string bad = degree_bound_violation(m, src.degs, dst.degs);
  rep.add(name + " is a bundle map", bad.empty(), bad);
  if (!bad.empty()) return;
  const auto c = cokernel_lengths(m, src.degs, dst.degs);
  if (!c.injective) {
    rep.add(name + " is injective", false);
    return;
  }
  rep.add(name + " is injective", true);
  std::string detail = "finite length " + std::to_string(c.finite) + ", infinity length " + std::to_string(c.infinity);
  for (const auto& e : c.finite_divisors) detail += ", divisor " + e.to_string(var);
  bool ok;
  if (where) {
    ok = c.finite == d && c.infinity == 0 && supported_at(c.finite_divisors, *where);
  } else {
    ok = c.finite == 0 && c.infinity == d;
  }
  rep.add("coker " + name + " has length dim supported at " + point_name(where), ok, detail);
}

}  // namespace

VerificationReport verify_shtuka(const Shtuka& S) {
  VerificationReport rep;
  const std::size_t r = static_cast<std::size_t>(std::max(S.rank, 0));
  const bool shape = S.tower != nullptr && S.rank >= 1 && S.dim >= 0 && S.split_E.degs.size() == r &&
                     S.split_Eprime.degs.size() == r && S.J.rows() == r && S.J.cols() == r && S.T.rows() == r &&
                     S.T.cols() == r && &S.J.tower() == S.tower && &S.T.tower() == S.tower &&
                     &S.zero.tower() == S.tower && (!S.pole || &S.pole->tower() == S.tower);
  rep.add("shape", shape, "rank x rank matrices and splitting types over the shtuka's field");
  if (!shape) return rep;
  check_support(rep, "J", S.J, S.map_source(), S.map_target(), S.pole, S.dim, S.var);
  check_support(rep, "tau", S.T, S.map_source(), S.map_target(), S.zero, S.dim, S.var);
  return rep;
}

Shtuka from_abelian_sheaf(const AbelianSheafLadder& L, long i) {
  Shtuka S;
  S.orientation = Orientation::right;
  S.tower = L.tower;
  S.rank = L.rank;
  S.dim = L.dim;
  S.pole = std::nullopt;
  S.zero = L.characteristic;
  S.split_E = L.split_at(i);
  S.split_Eprime = L.split_at(i + 1);
  S.J = L.pi_at(i);
  S.T = L.tau_at(i);
  S.var = L.var;
  return S;
}

Shtuka pushforward_shtuka(const Shtuka& Sp, const CoverMap& cover) {
  const FieldTower& k = Sp.field();
  const Poly p = cover.lifted(k);
  const int n = cover.degree();
  Shtuka S = Sp;
  S.rank = n * Sp.rank;
  if (Sp.pole) S.pole = p.eval(*Sp.pole);
  S.zero = p.eval(Sp.zero);
  S.split_E = push_split(Sp.split_E, n);
  S.split_Eprime = push_split(Sp.split_Eprime, n);
  S.J = push_matrix(Sp.J, p);
  S.T = push_matrix(Sp.T, p);
  S.var = "x";
  return S;
}

Shtuka base_change(const Shtuka& S, const Embedding& emb) {
  if (&emb.source() != S.tower) throw TowerMismatch("embedding source is not the shtuka's field");
  Shtuka out = S;
  out.tower = &emb.target();
  if (S.pole) out.pole = emb(*S.pole);
  out.zero = emb(S.zero);
  out.J = S.J.map(emb);
  out.T = S.T.map(emb);
  return out;
}

namespace {

std::vector<PolyMatrix> shtuka_residual(const Shtuka& S1, const Shtuka& S2, const PolyMatrix& U,
                                        const PolyMatrix& Up) {
  if (S1.orientation == Orientation::right) {
    return {Up * S1.J - S2.J * U, Up * S1.T - S2.T * U.frobenius()};
  }
  return {U.frobenius() * S1.J - S2.J * Up, U * S1.T - S2.T * Up};
}

void require_same_shape(const Shtuka& a, const Shtuka& b) {
  if (a.tower != b.tower) throw ShapeMismatch("shtukas live over different fields");
  if (a.orientation != b.orientation) throw ShapeMismatch("shtukas have different orientations");
  if (a.rank != b.rank || a.dim != b.dim) throw ShapeMismatch("shtukas differ in rank or dimension");
  if (a.pole != b.pole || a.zero != b.zero) throw ShapeMismatch("shtukas have different poles or zeros");
}

}  // namespace

bool check_shtuka_iso(const Shtuka& S1, const Shtuka& S2, const ShtukaIso& iso) {
  if (!degree_bound_violation(iso.U, S1.split_E.degs, S2.split_E.degs).empty()) return false;
  if (!degree_bound_violation(iso.Uprime, S1.split_Eprime.degs, S2.split_Eprime.degs).empty()) return false;
  if (S1.split_E.total() != S2.split_E.total() || S1.split_Eprime.total() != S2.split_Eprime.total()) return false;
  for (const auto& m : shtuka_residual(S1, S2, iso.U, iso.Uprime))
    if (!m.is_zero()) return false;
  return unimodular(iso.U) && unimodular(iso.Uprime);
}

std::vector<ShtukaIso> shtuka_iso_solver(const Shtuka& S1, const Shtuka& S2, const SemilinearOptions& opt) {
  require_same_shape(S1, S2);
  if (S1.split_E.total() != S2.split_E.total() || S1.split_Eprime.total() != S2.split_Eprime.total()) return {};
  UnknownMatrices unk(S1.field());
  unk.add_bundle_map(S1.split_E.degs, S2.split_E.degs);
  unk.add_bundle_map(S1.split_Eprime.degs, S2.split_Eprime.degs);
  auto res = solve_semilinear(
      unk, [&](const std::vector<PolyMatrix>& X) { return shtuka_residual(S1, S2, X[0], X[1]); },
      [](const std::vector<PolyMatrix>& X) { return unimodular(X[0]) && unimodular(X[1]); }, opt);
  std::vector<ShtukaIso> out;
  for (auto& s : res.solutions) out.push_back({s[0], s[1]});
  return out;
}

}  // namespace coefchange
