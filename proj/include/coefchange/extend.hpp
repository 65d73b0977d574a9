#pragma once

#include <cstddef>
#include <vector>

#include "coefchange/drinfeld.hpp"

namespace coefchange {

inline constexpr std::uint64_t kDefaultCandidateCap = 10'000'000;

/// Find all A'-module structures phi' with p(phi'(y)) = phi(x) for a fixed A-module phi.
struct ExtensionProblem {
  DrinfeldModule base_module;
  CoverMap cover;
  int target_rank;

  /// Checks rank(base) = n * r' and that the base module is in standard form.
  ExtensionProblem(DrinfeldModule base, CoverMap cover);

  const FieldTower& field() const { return *base_module.tower; }
};

struct ExtensionSolution {
  SkewPoly delta;
  FieldElement lifted_characteristic;

  DrinfeldModule as_module() const;
  friend bool operator==(const ExtensionSolution& a, const ExtensionSolution& b) { return a.delta == b.delta; }
};

struct SearchOptions {
  std::uint64_t cap = kDefaultCandidateCap;
  unsigned threads = 1;
};

/// Staged solver: the leading coefficient from its norm-type power equation, then each lower
/// coefficient from the next tau-coefficient of p(delta'), then a full check. Sorted canonically.
std::vector<ExtensionSolution> enumerate_extensions(const ExtensionProblem& prob, const SearchOptions& opt = {});

/// Exhaustive scan over all coefficient tuples in K^(r'+1). Sorted canonically.
std::vector<ExtensionSolution> brute_oracle(const ExtensionProblem& prob, const SearchOptions& opt = {});

/// Classes of solutions as sorted index lists; each class starts with its smallest member.
using Partition = std::vector<std::vector<std::size_t>>;

/// Orbits of Aut(base) acting on the solutions by conjugation.
Partition extension_iso_classes(const ExtensionProblem& prob, const std::vector<ExtensionSolution>& sols);
/// The same partition computed by running iso_solver on every pair of solutions.
Partition pairwise_iso_partition(const std::vector<ExtensionSolution>& sols);

struct GaloisRow {
  unsigned s;
  std::size_t solutions;
  std::size_t classes;
};

/// For s = 1..s_max: counts of solutions and classes over the degree-s extension of K.
std::vector<GaloisRow> galois_merge_report(const ExtensionProblem& prob, unsigned s_max,
                                           const SearchOptions& opt = {});

ExtensionProblem base_change(const ExtensionProblem& prob, const Embedding& emb);

}  // namespace coefchange
