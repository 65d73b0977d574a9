#include "coefchange/linalg.hpp"

namespace coefchange {

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

// in-place reduced row echelon form; returns pivot columns
std::vector<std::size_t> rref(std::vector<FpRow>& a, std::size_t ncols, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    const std::uint64_t inv = inv_mod(a[row][col], p);
    for (auto& v : a[row]) v = static_cast<std::uint32_t>(v * inv % p);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      const std::uint64_t f = a[i][col];
      for (std::size_t j = col; j < ncols; ++j) {
        a[i][j] = static_cast<std::uint32_t>((a[i][j] + (p - f) * a[row][j]) % p);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank_mod_p(std::vector<FpRow> rows, std::uint32_t p) {
  if (rows.empty()) return 0;
  return rref(rows, rows.front().size(), p).size();
}

std::vector<FpRow> nullspace_mod_p(const std::vector<FpRow>& a, std::size_t ncols, std::uint32_t p) {
  std::vector<FpRow> m = a;
  for (auto& r : m) {
    if (r.size() != ncols) throw ShapeMismatch("row length differs from column count");
  }
  const auto pivots = rref(m, ncols, p);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<FpRow> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    FpRow v(ncols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (p - m[r][f]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank_over(std::vector<std::vector<FieldElement>> a) {
  if (a.empty()) return 0;
  const std::size_t ncols = a.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col].is_zero()) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    const FieldElement inv = a[row][col].inverse();
    for (std::size_t i = row + 1; i < a.size(); ++i) {
      if (a[i][col].is_zero()) continue;
      const FieldElement f = a[i][col] * inv;
      for (std::size_t j = col; j < ncols; ++j) a[i][j] -= f * a[row][j];
    }
    ++row;
  }
  return row;
}

}  // namespace coefchange
