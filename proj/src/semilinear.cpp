#include "coefchange/semilinear.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace coefchange {

std::size_t UnknownMatrices::add_block(std::size_t rows, std::size_t cols, std::vector<int> bound) {
  if (bound.size() != rows * cols) throw ShapeMismatch("degree bound list has the wrong length");
  const std::size_t width = std::size_t{tower_->degree()} * tower_->base_degree();
  Block b{rows, cols, count_, std::move(bound)};
  for (int d : b.bound)
    if (d >= 0) count_ += static_cast<std::size_t>(d + 1) * width;
  blocks_.push_back(std::move(b));
  return blocks_.size() - 1;
}

std::size_t UnknownMatrices::add_bundle_map(const std::vector<int>& src, const std::vector<int>& dst) {
  std::vector<int> bound;
  for (int d : dst)
    for (int s : src) bound.push_back(d - s);
  return add_block(dst.size(), src.size(), std::move(bound));
}

std::vector<PolyMatrix> UnknownMatrices::assemble(const FpRow& v) const {
  const FieldTower& k = *tower_;
  const std::size_t width = std::size_t{k.degree()} * k.base_degree();
  std::vector<PolyMatrix> out;
  for (const auto& b : blocks_) {
    PolyMatrix m(k, b.rows, b.cols);
    std::size_t pos = b.offset;
    for (std::size_t e = 0; e < b.bound.size(); ++e) {
      if (b.bound[e] < 0) continue;
      std::vector<FieldElement> c;
      for (int d = 0; d <= b.bound[e]; ++d) {
        std::uint64_t idx = 0;
        for (std::size_t t = width; t-- > 0;) idx = idx * k.characteristic() + v[pos + t];
        c.push_back(FieldElement::from_index(k, idx));
        pos += width;
      }
      m(e / b.cols, e % b.cols) = Poly(k, std::move(c));
    }
    out.push_back(std::move(m));
  }
  return out;
}

SemilinearResult solve_semilinear(const UnknownMatrices& unknowns, const Residual& residual, const Filter& filter,
                                  const SemilinearOptions& opt) {
  const FieldTower& k = unknowns.tower();
  const std::uint32_t p = k.characteristic();
  const std::size_t n = unknowns.unknown_count();
  const std::size_t width = std::size_t{k.degree()} * k.base_degree();

  // images of the unit vectors, flattened by (matrix, entry, degree, digit)
  std::vector<std::vector<PolyMatrix>> cols;
  cols.reserve(n);
  for (std::size_t u = 0; u < n; ++u) {
    FpRow v(n, 0);
    v[u] = 1;
    cols.push_back(residual(unknowns.assemble(v)));
  }
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, int> max_deg;
  for (const auto& c : cols)
    for (std::size_t mi = 0; mi < c.size(); ++mi)
      for (std::size_t i = 0; i < c[mi].rows(); ++i)
        for (std::size_t j = 0; j < c[mi].cols(); ++j) {
          const int d = c[mi](i, j).degree();
          if (d < 0) continue;
          auto& slot = max_deg[{mi, i, j}];
          slot = std::max(slot, d + 1);
        }
  std::size_t nrows = 0;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> offset;
  for (const auto& [key, len] : max_deg) {
    offset[key] = nrows;
    nrows += static_cast<std::size_t>(len) * width;
  }
  std::vector<FpRow> a(nrows, FpRow(n, 0));
  for (std::size_t u = 0; u < n; ++u) {
    const auto& c = cols[u];
    for (std::size_t mi = 0; mi < c.size(); ++mi)
      for (std::size_t i = 0; i < c[mi].rows(); ++i)
        for (std::size_t j = 0; j < c[mi].cols(); ++j) {
          const Poly& e = c[mi](i, j);
          if (e.is_zero()) continue;
          const std::size_t base = offset.at({mi, i, j});
          for (int d = 0; d <= e.degree(); ++d)
            for (std::size_t t = 0; t < width; ++t) a[base + d * width + t][u] = e.coeffs()[d].digit(t);
        }
  }

  SemilinearResult out;
  out.basis = nullspace_mod_p(a, n, p);
  const std::size_t dim = out.basis.size();
  unsigned __int128 points = 1;
  for (std::size_t i = 0; i < dim && points <= opt.cap; ++i) points *= p;
  if (points > opt.cap) {
    throw CapExceeded("semilinear solution space of dimension " + std::to_string(dim) + " over F_" +
                          std::to_string(p),
                      points > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(points), opt.cap);
  }

  std::vector<FpRow> accepted;
  std::vector<std::uint32_t> coef(dim, 0);
  for (std::uint64_t it = 0; it < static_cast<std::uint64_t>(points); ++it) {
    FpRow v(n, 0);
    for (std::size_t b = 0; b < dim; ++b) {
      if (coef[b] == 0) continue;
      for (std::size_t u = 0; u < n; ++u) v[u] = static_cast<std::uint32_t>((v[u] + std::uint64_t{coef[b]} * out.basis[b][u]) % p);
    }
    if (filter(unknowns.assemble(v))) {
      accepted.push_back(std::move(v));
      if (opt.limit != 0 && accepted.size() >= opt.limit) break;
    }
    for (std::size_t b = 0; b < dim; ++b) {
      if (++coef[b] < p) break;
      coef[b] = 0;
    }
  }
  std::sort(accepted.begin(), accepted.end());
  for (const auto& v : accepted) out.solutions.push_back(unknowns.assemble(v));
  return out;
}

bool unimodular(const PolyMatrix& m) {
  const Poly d = m.det();
  return d.degree() == 0;
}

}  // namespace coefchange
