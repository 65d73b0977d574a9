#pragma once

#include <functional>
#include <vector>

#include "coefchange/linalg.hpp"
#include "coefchange/polymatrix.hpp"

namespace coefchange {

/// Unknown polynomial matrices whose entries have prescribed degree bounds. Each coefficient
/// in K is split into its m*e digits over F_p, so any F_p-linear condition (in particular
/// anything built from products with fixed matrices and coefficient Frobenius) becomes a
/// linear system over F_p.
class UnknownMatrices {
 public:
  explicit UnknownMatrices(const FieldTower& k) : tower_(&k) {}

  /// Adds a rows x cols block; bound[j*cols + t] is the maximal degree of entry (j,t)
  /// (negative: entry fixed to zero). Returns the block index.
  std::size_t add_block(std::size_t rows, std::size_t cols, std::vector<int> bound);
  /// Block whose entry (j,t) may have degree dst[j] - src[t].
  std::size_t add_bundle_map(const std::vector<int>& src, const std::vector<int>& dst);

  std::size_t unknown_count() const noexcept { return count_; }
  const FieldTower& tower() const noexcept { return *tower_; }

  /// Matrices for a digit vector of length unknown_count().
  std::vector<PolyMatrix> assemble(const FpRow& v) const;

 private:
  struct Block {
    std::size_t rows, cols, offset;
    std::vector<int> bound;
  };
  const FieldTower* tower_;
  std::vector<Block> blocks_;
  std::size_t count_ = 0;
};

/// Residual of the defining equations; must vanish exactly on solutions and be F_p-linear.
using Residual = std::function<std::vector<PolyMatrix>(const std::vector<PolyMatrix>&)>;
using Filter = std::function<bool(const std::vector<PolyMatrix>&)>;

struct SemilinearOptions {
  /// Largest number of points of the solution space that may be scanned.
  std::uint64_t cap = std::uint64_t{1} << 22;
  /// Stop after this many accepted solutions (0: all).
  std::size_t limit = 0;
};

struct SemilinearResult {
  /// Basis of the F_p-solution space of the linear equations.
  std::vector<FpRow> basis;
  /// Accepted points, sorted by digit vector.
  std::vector<std::vector<PolyMatrix>> solutions;
};

/// Solves residual(X) = 0 over F_p, then scans the solution space keeping points accepted by
/// filter. Throws CapExceeded when p^dim exceeds the cap.
SemilinearResult solve_semilinear(const UnknownMatrices& unknowns, const Residual& residual, const Filter& filter,
                                  const SemilinearOptions& opt = {});

/// det is a nonzero constant.
bool unimodular(const PolyMatrix& m);

}  // namespace coefchange
