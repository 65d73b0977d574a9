#pragma once

#include <cstdint>
#include <vector>

#include "coefchange/ff.hpp"

namespace coefchange {

using FpRow = std::vector<std::uint32_t>;

/// Rank of a matrix over F_p (entries already reduced mod p).
std::size_t rank_mod_p(std::vector<FpRow> rows, std::uint32_t p);

/// Basis of {v : A v = 0} over F_p. The basis is the standard one attached to the reduced
/// row echelon form (one vector per free column, free entry 1), so it is canonical.
std::vector<FpRow> nullspace_mod_p(const std::vector<FpRow>& a, std::size_t ncols, std::uint32_t p);

/// Rank of a matrix with entries in one FieldTower.
std::size_t rank_over(std::vector<std::vector<FieldElement>> rows);

}  // namespace coefchange
