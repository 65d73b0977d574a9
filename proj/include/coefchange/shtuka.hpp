#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coefchange/sheaves.hpp"

namespace coefchange {

enum class Orientation { right, left };

/// A shtuka on P^1 with split bundles E, E'.
///   right: J : E -> E',  T : sigma^* E -> E'
///   left:  J : E' -> sigma^* E,  T : E' -> E
/// The pole is the support of coker J; nullopt stands for the point at infinity.
struct Shtuka {
  Orientation orientation = Orientation::right;
  const FieldTower* tower = nullptr;
  int rank = 0;
  int dim = 0;
  std::optional<FieldElement> pole;
  FieldElement zero;
  SplittingType split_E;
  SplittingType split_Eprime;
  PolyMatrix J;
  PolyMatrix T;
  std::string var = "x";

  const FieldTower& field() const { return *tower; }
  /// Splitting types of source and target of J and T.
  const SplittingType& map_source() const { return orientation == Orientation::right ? split_E : split_Eprime; }
  const SplittingType& map_target() const { return orientation == Orientation::right ? split_Eprime : split_E; }
};

VerificationReport verify_shtuka(const Shtuka& S);

/// Right shtuka (F_i, F_{i+1}, Pi_i, tau_i) with pole at infinity.
Shtuka from_abelian_sheaf(const AbelianSheafLadder& L, long i);

Shtuka pushforward_shtuka(const Shtuka& S, const CoverMap& cover);

Shtuka base_change(const Shtuka& S, const Embedding& emb);

/// U : E1 -> E2 and U' : E1' -> E2'.
struct ShtukaIso {
  PolyMatrix U;
  PolyMatrix Uprime;
};

bool check_shtuka_iso(const Shtuka& S1, const Shtuka& S2, const ShtukaIso& iso);

std::vector<ShtukaIso> shtuka_iso_solver(const Shtuka& S1, const Shtuka& S2, const SemilinearOptions& opt = {});

}  // namespace coefchange
