#pragma once

#include <string>
#include <vector>

#include "coefchange/drinfeld.hpp"
#include "coefchange/polymatrix.hpp"
#include "coefchange/report.hpp"
#include "coefchange/semilinear.hpp"

namespace coefchange {

/// Bundle O(degs_0 * inf) + ... + O(degs_{r-1} * inf) on P^1.
struct SplittingType {
  std::vector<int> degs;

  SplittingType shifted(int k) const;
  int total() const;
  friend bool operator==(const SplittingType&, const SplittingType&) = default;
};

/// One step of a ladder: F_i with Pi_i : F_i -> F_{i+1} and tau_i : sigma^* F_i -> F_{i+1}.
struct LadderLevel {
  SplittingType split;
  PolyMatrix pi;
  PolyMatrix tau;
};

/// An abelian sheaf on P^1 stored over one period; level i + period is level i twisted by
/// twist * inf with identical matrices.
struct AbelianSheafLadder {
  const FieldTower* tower = nullptr;
  int rank = 0;
  int dim = 0;
  int period = 1;
  int twist = 0;
  FieldElement characteristic;
  std::vector<LadderLevel> levels;
  /// Name of the curve coordinate, for printing only ("x" on C, "y" on C').
  std::string var = "x";

  const FieldTower& field() const { return *tower; }
  SplittingType split_at(long i) const;
  const PolyMatrix& pi_at(long i) const;
  const PolyMatrix& tau_at(long i) const;
};

VerificationReport verify_abelian_sheaf(const AbelianSheafLadder& L);

/// Elliptic sheaf of a Drinfeld module: d = 1, period = rank, twist = 1, Pi = identity and
/// tau the companion-type matrix of phi(x).
AbelianSheafLadder from_drinfeld(const DrinfeldModule& M);

/// Matrix over K[y] rewritten over K[x] (x = p(y)) in the basis y^t e_j, index t*cols + j.
PolyMatrix push_matrix(const PolyMatrix& a, const Poly& p_lifted);
/// Splitting type of pi_* of a bundle on C' with the given splitting, basis index t*r' + j.
SplittingType push_split(const SplittingType& s, int n);

AbelianSheafLadder pushforward(const AbelianSheafLadder& L, const CoverMap& cover);

/// Level i of the result is level i + s of L.
AbelianSheafLadder shift_ladder(const AbelianSheafLadder& L, long s);

AbelianSheafLadder base_change(const AbelianSheafLadder& L, const Embedding& emb);

/// U_i : F1_i -> F2_i for i = 0..period-1.
struct LadderIso {
  std::vector<PolyMatrix> U;
};

/// Every defining equation of a ladder isomorphism, checked directly.
bool check_ladder_iso(const AbelianSheafLadder& L1, const AbelianSheafLadder& L2, const LadderIso& iso);

std::vector<LadderIso> semilinear_iso_solver(const AbelianSheafLadder& L1, const AbelianSheafLadder& L2,
                                             const SemilinearOptions& opt = {});

/// Multiplication by y on every level: Y_i : F_i -> F_i(inf).
struct SheafModuleStructure {
  std::vector<PolyMatrix> Y;
};

bool check_module_structure(const AbelianSheafLadder& L, const CoverMap& cover, const SheafModuleStructure& s);

std::vector<SheafModuleStructure> enumerate_sheaf_module_structures(const AbelianSheafLadder& L,
                                                                    const CoverMap& cover,
                                                                    const SemilinearOptions& opt = {});

/// Ladder automorphisms U of L with U_i Y1_i = Y2_i U_i.
std::vector<LadderIso> structure_iso_solver(const AbelianSheafLadder& L, const SheafModuleStructure& s1,
                                            const SheafModuleStructure& s2, const SemilinearOptions& opt = {});

}  // namespace coefchange
