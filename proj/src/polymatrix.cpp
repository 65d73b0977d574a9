#include "coefchange/polymatrix.hpp"

#include <algorithm>

#include "coefchange/linalg.hpp"

namespace coefchange {

PolyMatrix::PolyMatrix(const FieldTower& k, std::size_t rows, std::size_t cols)
    : tower_(&k), rows_(rows), cols_(cols), e_(rows * cols, Poly(k)) {}

PolyMatrix PolyMatrix::identity(const FieldTower& k, std::size_t n) {
  PolyMatrix m(k, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(FieldElement::one(k));
  return m;
}

PolyMatrix PolyMatrix::from_rows(const FieldTower& k, const std::vector<std::vector<Poly>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  PolyMatrix m(k, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw ShapeMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (&rows[i][j].tower() != &k) throw TowerMismatch("matrix entry from a different field");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

PolyMatrix PolyMatrix::from_ints(const FieldTower& k,
                                 const std::vector<std::vector<std::vector<std::int64_t>>>& rows) {
  std::vector<std::vector<Poly>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (const auto& e : row) r.back().push_back(Poly::from_ints(k, e));
  }
  return from_rows(k, r);
}

const FieldTower& PolyMatrix::tower() const {
  if (tower_ == nullptr) throw TowerMismatch("detached matrix");
  return *tower_;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix sizes differ");
  PolyMatrix r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const { return *this + (-o); }

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix r = *this;
  for (auto& e : r.e_) e = -e;
  return r;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw ShapeMismatch("matrix product size mismatch");
  PolyMatrix r(tower(), rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Poly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

PolyMatrix PolyMatrix::operator*(const Poly& s) const {
  PolyMatrix r = *this;
  for (auto& e : r.e_) e = e * s;
  return r;
}

PolyMatrix PolyMatrix::frobenius(std::uint64_t e) const {
  PolyMatrix r = *this;
  for (auto& x : r.e_) x = x.frobenius(e);
  return r;
}

PolyMatrix PolyMatrix::map(const Embedding& emb) const {
  PolyMatrix r(emb.target(), rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].map(emb);
  return r;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix r(tower(), cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Poly& p) { return p.is_zero(); });
}

int PolyMatrix::max_degree() const {
  int d = kZeroDegree;
  for (const auto& e : e_) d = std::max(d, e.degree());
  return d;
}

Poly PolyMatrix::det() const {
  if (!square()) throw ShapeMismatch("determinant of a non-square matrix");
  const FieldTower& k = tower();
  if (rows_ == 0) return Poly::constant(FieldElement::one(k));
  // Bareiss: every division below is exact
  std::vector<std::vector<Poly>> a(rows_);
  for (std::size_t i = 0; i < rows_; ++i) a[i].assign(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
  Poly prev = Poly::constant(FieldElement::one(k));
  bool negate = false;
  const std::size_t n = rows_;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    if (a[c][c].is_zero()) {
      std::size_t s = c + 1;
      while (s < n && a[s][c].is_zero()) ++s;
      if (s == n) return Poly(k);
      std::swap(a[c], a[s]);
      negate = !negate;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]).divmod(prev).first;
      }
      a[i][c] = Poly(k);
    }
    prev = a[c][c];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

std::string PolyMatrix::to_string(const std::string& var) const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + (*this)(i, j).to_string(var);
    out += "]";
  }
  return out + "]";
}

SmithForm smith_form(const PolyMatrix& m) {
  const FieldTower& k = m.tower();
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<Poly>> a(R, std::vector<Poly>(C, Poly(k)));
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) a[i][j] = m(i, j);

  SmithForm out;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    for (;;) {
      // pivot: nonzero entry of least degree in the trailing block
      std::size_t pi = R, pj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (!a[i][j].is_zero() && (pi == R || a[i][j].degree() < a[pi][pj].degree())) {
            pi = i;
            pj = j;
          }
      if (pi == R) {
        for (auto& d : out.invariants) d = d.monic();
        return out;
      }
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);

      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a[i][t].is_zero()) continue;
        const Poly q = a[i][t].divmod(a[t][t]).first;
        for (std::size_t j = t; j < C; ++j) a[i][j] -= q * a[t][j];
        if (!a[i][t].is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a[t][j].is_zero()) continue;
        const Poly q = a[t][j].divmod(a[t][t]).first;
        for (std::size_t i = t; i < R; ++i) a[i][j] -= q * a[i][t];
        if (!a[t][j].is_zero()) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block by the pivot
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (!a[i][j].divmod(a[t][t]).second.is_zero()) {
            bad = i;
            break;
          }
      if (bad == R) break;
      for (std::size_t j = t; j < C; ++j) a[t][j] += a[bad][j];
    }
    out.invariants.push_back(a[t][t]);
    ++out.rank;
  }
  for (auto& d : out.invariants) d = d.monic();
  return out;
}

std::string degree_bound_violation(const PolyMatrix& m, const std::vector<int>& src, const std::vector<int>& dst) {
  if (m.rows() != dst.size() || m.cols() != src.size()) return "matrix shape does not match splitting types";
  std::string out;
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t t = 0; t < m.cols(); ++t) {
      const int bound = dst[j] - src[t];
      if (m(j, t).degree() > bound) {
        if (!out.empty()) out += "; ";
        out += "entry (" + std::to_string(j) + "," + std::to_string(t) + ") has degree " +
               std::to_string(m(j, t).degree()) + " > " + std::to_string(bound);
      }
    }
  return out;
}

PolyMatrix infinity_chart(const PolyMatrix& m, const std::vector<int>& src, const std::vector<int>& dst) {
  const std::string bad = degree_bound_violation(m, src, dst);
  if (!bad.empty()) throw ShapeMismatch("not a bundle map: " + bad);
  PolyMatrix n(m.tower(), m.rows(), m.cols());
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t t = 0; t < m.cols(); ++t) n(j, t) = m(j, t).reversed(dst[j] - src[t]);
  return n;
}

CokernelLengths cokernel_lengths(const PolyMatrix& m, const std::vector<int>& src, const std::vector<int>& dst) {
  if (!m.square()) throw ShapeMismatch("cokernel length needs a square matrix");
  CokernelLengths out;
  const SmithForm fin = smith_form(m);
  out.injective = fin.rank == m.rows();
  if (!out.injective) return out;
  const FieldTower& k = m.tower();
  for (const auto& d : fin.invariants) {
    out.finite += d.degree();
    if (d.degree() > 0) out.finite_divisors.push_back(d);
  }
  const SmithForm inf = smith_form(infinity_chart(m, src, dst));
  for (const auto& d : inf.invariants) {
    const int v = d.valuation();
    out.infinity += v;
    if (v > 0) out.infinity_divisors.push_back(Poly::monomial(FieldElement::one(k), v));
  }
  return out;
}

bool supported_at(const std::vector<Poly>& divisors, const FieldElement& root) {
  for (const auto& d : divisors) {
    if (d.degree() <= 0) continue;
    const FieldTower& k = d.tower();
    const Poly lin(k, {-root, FieldElement::one(k)});
    if (d.monic() != lin.pow(static_cast<unsigned>(d.degree()))) return false;
  }
  return true;
}

int quotient_dimension(const PolyMatrix& m) {
  if (!m.square()) throw ShapeMismatch("quotient dimension needs a square matrix");
  const Poly det = m.det();
  if (det.is_zero()) throw InvalidArgument("singular matrix has infinite-dimensional cokernel");
  const int D = det.degree();
  const std::size_t r = m.rows();
  if (D == 0) return 0;
  const FieldTower& k = m.tower();
  std::vector<std::vector<FieldElement>> images;
  for (std::size_t t = 0; t < r; ++t) {
    for (int s = 0; s < D; ++s) {
      std::vector<FieldElement> v(r * D, FieldElement::zero(k));
      const Poly xs = Poly::monomial(FieldElement::one(k), s);
      for (std::size_t j = 0; j < r; ++j) {
        const Poly e = (m(j, t) * xs).divmod(det).second;
        for (int c = 0; c < D; ++c) v[j * D + c] = e.coeff(c);
      }
      images.push_back(std::move(v));
    }
  }
  return static_cast<int>(r) * D - static_cast<int>(rank_over(std::move(images)));
}

}  // namespace coefchange
