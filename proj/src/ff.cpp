#include "coefchange/ff.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace coefchange {
namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t{d} * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (r > (std::uint64_t{1} << 62) / base) throw InvalidArgument("field too large");
    r *= base;
  }
  return r;
}

// Monic f of degree deg over F_p has no monic factor of degree 1..deg/2.
bool irreducible_over_prime(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  std::vector<std::uint64_t> r(f.size());
  std::vector<std::uint32_t> g;
  for (unsigned d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = checked_pow(p, d);
    g.assign(d + 1, 0);
    g[d] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t v = idx;
      for (unsigned j = 0; j < d; ++j) {
        g[j] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      std::copy(f.begin(), f.end(), r.begin());
      for (unsigned k = deg; k >= d; --k) {
        const std::uint64_t c = r[k] % p;
        if (c != 0) {
          for (unsigned j = 0; j <= d; ++j) r[k - d + j] = (r[k - d + j] + (p - c) * g[j]) % p;
        }
        if (k == d) break;
      }
      bool zero = true;
      for (unsigned j = 0; j < d; ++j) zero = zero && (r[j] % p == 0);
      if (zero) return false;
    }
  }
  return true;
}

using TowerKey = std::tuple<std::uint32_t, std::vector<std::uint32_t>, std::vector<std::uint32_t>>;

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<TowerKey, std::unique_ptr<FieldTower>>& registry() {
  static std::map<TowerKey, std::unique_ptr<FieldTower>> r;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldTower

const FieldTower& FieldTower::get(std::uint32_t p, std::vector<std::uint32_t> base_modulus,
                                  std::vector<BaseCoeff> ext_modulus) {
  if (!is_prime(p) || p > 65521) throw InvalidArgument("characteristic must be a prime below 2^16");
  for (auto& c : base_modulus) c %= p;
  if (base_modulus.size() < 2 || base_modulus.back() != 1) {
    throw InvalidArgument("base modulus must be monic of degree >= 1");
  }
  const std::size_t e = base_modulus.size() - 1;
  if (ext_modulus.size() < 2) throw InvalidArgument("extension modulus must have degree >= 1");
  for (auto& c : ext_modulus) {
    if (c.size() > e) throw InvalidArgument("extension modulus coefficient has more than e digits");
    c.resize(e, 0);
    for (auto& d : c) d %= p;
  }
  const BaseCoeff& lead = ext_modulus.back();
  if (lead[0] != 1 || std::any_of(lead.begin() + 1, lead.end(), [](auto d) { return d != 0; })) {
    throw InvalidArgument("extension modulus must be monic");
  }
  const std::size_t m = ext_modulus.size() - 1;
  if (m * e > kMaxDigits) throw InvalidArgument("field degree over F_p exceeds " + std::to_string(kMaxDigits));

  std::vector<std::uint32_t> flat;
  for (const auto& c : ext_modulus) flat.insert(flat.end(), c.begin(), c.end());
  TowerKey key{p, base_modulus, flat};

  std::lock_guard lock(registry_mutex());
  auto& reg = registry();
  if (auto it = reg.find(key); it != reg.end()) return *it->second;
  std::unique_ptr<FieldTower> t(new FieldTower(p, std::move(base_modulus), std::move(ext_modulus)));
  const FieldTower& ref = *t;
  reg.emplace(std::move(key), std::move(t));
  return ref;
}

const FieldTower& FieldTower::prime_field(std::uint32_t p) { return get(p, {0, 1}, {{0}, {1}}); }

FieldTower::FieldTower(std::uint32_t p, std::vector<std::uint32_t> base, std::vector<BaseCoeff> ext)
    : p_(p),
      e_(static_cast<unsigned>(base.size() - 1)),
      m_(static_cast<unsigned>(ext.size() - 1)),
      base_(std::move(base)),
      ext_(std::move(ext)) {
  q_ = checked_pow(p_, e_);
  size_ = checked_pow(q_, m_);
  if (!irreducible_over_prime(base_, p_)) throw InvalidArgument("base modulus is reducible over F_p");
  for (unsigned j = 0; j < m_; ++j) {
    for (unsigned t = 0; t < e_; ++t) ext_flat_.push_back(static_cast<std::uint16_t>(ext_[j][t]));
  }
  std::vector<std::uint16_t> full(ext_flat_);
  full.push_back(1);
  for (unsigned t = 1; t < e_; ++t) full.push_back(0);
  if (!irreducible_over_fq(full, m_)) throw InvalidArgument("extension modulus is reducible over F_q");

  if (m_ > 1) {
    // (w^j)^q by square-and-multiply
    for (unsigned j = 0; j < m_; ++j) {
      std::array<std::uint16_t, kMaxDigits> base_pow{};
      base_pow[j * e_] = 1;
      std::array<std::uint16_t, kMaxDigits> acc{};
      acc[0] = 1;
      std::array<std::uint16_t, kMaxDigits> tmp{};
      for (std::uint64_t n = q_; n > 0; n >>= 1) {
        if (n & 1) {
          mul(acc.data(), base_pow.data(), tmp.data());
          acc = tmp;
        }
        mul(base_pow.data(), base_pow.data(), tmp.data());
        base_pow = tmp;
      }
      frob_.push_back(acc);
    }
  }
}

bool FieldTower::same_base(const FieldTower& other) const noexcept {
  return p_ == other.p_ && base_ == other.base_;
}

const FieldTower& FieldTower::base_field() const {
  BaseCoeff zero(e_, 0), one(e_, 0);
  one[0] = 1;
  return get(p_, base_, {zero, one});
}

const FieldTower& FieldTower::extension(unsigned s, std::uint64_t cap) const {
  if (s == 0) throw InvalidArgument("extension degree must be positive");
  if (s == 1) return *this;
  const unsigned degree = m_ * s;
  if (std::uint64_t{degree} * e_ > kMaxDigits) {
    throw CapExceeded("extension field of degree " + std::to_string(degree) + " over F_q", degree * e_, kMaxDigits);
  }
  const std::uint64_t size = checked_pow(q_, degree);
  if (size > cap) throw CapExceeded("extension field size", size, cap);
  return get(p_, base_, smallest_irreducible(*this, degree));
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  os << "F_" << size_ << " (p=" << p_ << ", q=" << q_ << ", m=" << m_ << ")";
  return os.str();
}

void FieldTower::base_mul(const std::uint16_t* a, const std::uint16_t* b, std::uint16_t* out) const {
  if (e_ == 1) {
    out[0] = static_cast<std::uint16_t>((std::uint32_t{a[0]} * b[0]) % p_);
    return;
  }
  std::uint64_t acc[2 * kMaxDigits] = {};
  for (unsigned i = 0; i < e_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < e_; ++j) acc[i + j] += std::uint64_t{a[i]} * b[j];
  }
  for (unsigned k = 0; k + 1 < 2 * e_; ++k) acc[k] %= p_;
  for (unsigned k = 2 * e_ - 2; k >= e_; --k) {
    const std::uint64_t c = acc[k];
    if (c != 0) {
      for (unsigned j = 0; j < e_; ++j) acc[k - e_ + j] = (acc[k - e_ + j] + (p_ - c) * base_[j]) % p_;
    }
  }
  for (unsigned t = 0; t < e_; ++t) out[t] = static_cast<std::uint16_t>(acc[t]);
}

void FieldTower::mul(const std::uint16_t* a, const std::uint16_t* b, std::uint16_t* out) const {
  if (e_ == 1) {
    std::uint64_t acc[2 * kMaxDigits] = {};
    for (unsigned i = 0; i < m_; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < m_; ++j) acc[i + j] += std::uint64_t{a[i]} * b[j];
    }
    for (unsigned k = 0; k + 1 < 2 * m_; ++k) acc[k] %= p_;
    for (unsigned k = 2 * m_ - 2; k >= m_; --k) {
      const std::uint64_t c = acc[k];
      if (c != 0) {
        for (unsigned j = 0; j < m_; ++j) acc[k - m_ + j] = (acc[k - m_ + j] + (p_ - c) * ext_flat_[j]) % p_;
      }
    }
    for (unsigned t = 0; t < m_; ++t) out[t] = static_cast<std::uint16_t>(acc[t]);
    return;
  }
  std::uint16_t prod[2 * kMaxDigits] = {};
  std::uint16_t tmp[kMaxDigits];
  for (unsigned i = 0; i < m_; ++i) {
    for (unsigned j = 0; j < m_; ++j) {
      base_mul(a + i * e_, b + j * e_, tmp);
      std::uint16_t* dst = prod + (i + j) * e_;
      for (unsigned t = 0; t < e_; ++t) dst[t] = static_cast<std::uint16_t>((dst[t] + tmp[t]) % p_);
    }
  }
  for (unsigned k = 2 * m_ - 2; k >= m_; --k) {
    const std::uint16_t* c = prod + k * e_;
    if (std::all_of(c, c + e_, [](auto d) { return d == 0; })) continue;
    for (unsigned j = 0; j < m_; ++j) {
      base_mul(c, ext_flat_.data() + j * e_, tmp);
      std::uint16_t* dst = prod + (k - m_ + j) * e_;
      for (unsigned t = 0; t < e_; ++t) dst[t] = static_cast<std::uint16_t>((dst[t] + p_ - tmp[t]) % p_);
    }
  }
  std::copy(prod, prod + m_ * e_, out);
}

void FieldTower::frobenius_once(const std::uint16_t* a, std::uint16_t* out) const {
  const unsigned w = m_ * e_;
  if (m_ == 1) {
    std::copy(a, a + w, out);
    return;
  }
  std::uint16_t acc[kMaxDigits] = {};
  std::uint16_t tmp[kMaxDigits];
  for (unsigned j = 0; j < m_; ++j) {
    const std::uint16_t* aj = a + j * e_;
    if (std::all_of(aj, aj + e_, [](auto d) { return d == 0; })) continue;
    for (unsigned t = 0; t < m_; ++t) {
      base_mul(aj, frob_[j].data() + t * e_, tmp);
      for (unsigned u = 0; u < e_; ++u) {
        acc[t * e_ + u] = static_cast<std::uint16_t>((acc[t * e_ + u] + tmp[u]) % p_);
      }
    }
  }
  std::copy(acc, acc + w, out);
}

bool FieldTower::irreducible_over_fq(const std::vector<std::uint16_t>& f, unsigned degree) const {
  const std::uint64_t q = q_;
  std::vector<std::uint16_t> r;
  std::vector<std::uint16_t> g;
  std::uint16_t tmp[kMaxDigits];
  for (unsigned d = 1; d <= degree / 2; ++d) {
    const std::uint64_t count = checked_pow(q, d);
    g.assign((d + 1) * e_, 0);
    g[d * e_] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t v = idx;
      for (unsigned k = 0; k < d * e_; ++k) {
        g[k] = static_cast<std::uint16_t>(v % p_);
        v /= p_;
      }
      r = f;
      for (unsigned k = degree; k >= d; --k) {
        const std::uint16_t* c = r.data() + k * e_;
        std::uint16_t lead[kMaxDigits];
        std::copy(c, c + e_, lead);
        if (!std::all_of(lead, lead + e_, [](auto x) { return x == 0; })) {
          for (unsigned j = 0; j <= d; ++j) {
            base_mul(lead, g.data() + j * e_, tmp);
            std::uint16_t* dst = r.data() + (k - d + j) * e_;
            for (unsigned u = 0; u < e_; ++u) dst[u] = static_cast<std::uint16_t>((dst[u] + p_ - tmp[u]) % p_);
          }
        }
        if (k == d) break;
      }
      if (std::all_of(r.begin(), r.begin() + d * e_, [](auto x) { return x == 0; })) return false;
    }
  }
  return true;
}

std::vector<FieldTower::BaseCoeff> smallest_irreducible(const FieldTower& base, unsigned degree) {
  if (degree == 0) throw InvalidArgument("degree must be positive");
  const unsigned e = base.e_;
  const std::uint32_t p = base.p_;
  const std::uint64_t count = checked_pow(base.q_, degree);
  std::vector<std::uint16_t> f((degree + 1) * e, 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t v = idx;
    for (unsigned k = 0; k < degree * e; ++k) {
      f[k] = static_cast<std::uint16_t>(v % p);
      v /= p;
    }
    std::fill(f.begin() + degree * e, f.end(), 0);
    f[degree * e] = 1;
    if (base.irreducible_over_fq(f, degree)) {
      std::vector<FieldTower::BaseCoeff> out(degree + 1, FieldTower::BaseCoeff(e, 0));
      for (unsigned j = 0; j <= degree; ++j) {
        for (unsigned t = 0; t < e; ++t) out[j][t] = f[j * e + t];
      }
      return out;
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement FieldElement::zero(const FieldTower& k) {
  FieldElement a;
  a.tower_ = &k;
  return a;
}

FieldElement FieldElement::one(const FieldTower& k) {
  FieldElement a = zero(k);
  a.d_[0] = 1;
  return a;
}

FieldElement FieldElement::from_int(const FieldTower& k, std::int64_t v) {
  FieldElement a = zero(k);
  const std::int64_t p = k.characteristic();
  a.d_[0] = static_cast<std::uint16_t>(((v % p) + p) % p);
  return a;
}

FieldElement FieldElement::from_index(const FieldTower& k, std::uint64_t v) {
  if (v >= k.size()) throw InvalidArgument("element index out of range");
  FieldElement a = zero(k);
  for (std::size_t i = 0; i < a.width(); ++i) {
    a.d_[i] = static_cast<std::uint16_t>(v % k.characteristic());
    v /= k.characteristic();
  }
  return a;
}

FieldElement FieldElement::from_coords(const FieldTower& k, const std::vector<FieldTower::BaseCoeff>& coords) {
  if (coords.size() > k.degree()) throw InvalidArgument("too many coordinates for field of degree " + std::to_string(k.degree()));
  FieldElement a = zero(k);
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j].size() > k.base_degree()) throw InvalidArgument("coordinate has more than e digits");
    for (std::size_t t = 0; t < coords[j].size(); ++t) {
      a.d_[j * k.base_degree() + t] = static_cast<std::uint16_t>(coords[j][t] % k.characteristic());
    }
  }
  return a;
}

FieldElement FieldElement::from_base(const FieldTower& k, const FieldTower::BaseCoeff& digits) {
  return from_coords(k, {digits});
}

FieldElement FieldElement::generator(const FieldTower& k) {
  if (k.degree() == 1) return -from_coords(k, {k.ext_modulus()[0]});
  FieldElement a = zero(k);
  a.d_[k.base_degree()] = 1;
  return a;
}

const FieldTower& FieldElement::tower() const {
  if (tower_ == nullptr) throw TowerMismatch("detached field element");
  return *tower_;
}

std::uint64_t FieldElement::index() const noexcept {
  if (tower_ == nullptr) return 0;
  std::uint64_t v = 0;
  for (std::size_t i = width(); i-- > 0;) v = v * tower_->p_ + d_[i];
  return v;
}

std::vector<FieldTower::BaseCoeff> FieldElement::coords() const {
  const auto& k = tower();
  std::vector<FieldTower::BaseCoeff> out(k.m_, FieldTower::BaseCoeff(k.e_, 0));
  for (unsigned j = 0; j < k.m_; ++j) {
    for (unsigned t = 0; t < k.e_; ++t) out[j][t] = d_[j * k.e_ + t];
  }
  return out;
}

bool FieldElement::is_zero() const noexcept {
  return std::all_of(d_.begin(), d_.end(), [](auto d) { return d == 0; });
}

bool FieldElement::is_one() const noexcept {
  return d_[0] == 1 && std::all_of(d_.begin() + 1, d_.end(), [](auto d) { return d == 0; });
}

bool FieldElement::in_base_field() const noexcept {
  if (tower_ == nullptr) return false;
  return std::all_of(d_.begin() + tower_->e_, d_.end(), [](auto d) { return d == 0; });
}

void FieldElement::check_same(const FieldElement& o) const {
  if (tower_ == nullptr || tower_ != o.tower_) throw TowerMismatch();
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  FieldElement r = *this;
  const std::uint32_t p = tower_->p_;
  for (std::size_t i = 0; i < width(); ++i) r.d_[i] = static_cast<std::uint16_t>((d_[i] + o.d_[i]) % p);
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  FieldElement r = *this;
  const std::uint32_t p = tower_->p_;
  for (std::size_t i = 0; i < width(); ++i) r.d_[i] = static_cast<std::uint16_t>((d_[i] + p - o.d_[i]) % p);
  return r;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  const std::uint32_t p = tower().p_;
  for (std::size_t i = 0; i < width(); ++i) r.d_[i] = static_cast<std::uint16_t>((p - d_[i]) % p);
  return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  FieldElement r = zero(*tower_);
  tower_->mul(d_.data(), o.d_.data(), r.d_.data());
  return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return *this * o.inverse();
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return pow(tower().size() - 2);
}

FieldElement FieldElement::pow(std::uint64_t n) const {
  const FieldTower& k = tower();
  FieldElement acc = one(k);
  FieldElement base = *this;
  for (; n > 0; n >>= 1) {
    if (n & 1) acc = acc * base;
    if (n > 1) base = base * base;
  }
  return acc;
}

FieldElement FieldElement::frobenius(std::uint64_t e) const {
  const FieldTower& k = tower();
  FieldElement r = *this;
  const std::uint64_t steps = e % k.m_;
  for (std::uint64_t i = 0; i < steps; ++i) {
    FieldElement next = zero(k);
    k.frobenius_once(r.d_.data(), next.d_.data());
    r = next;
  }
  return r;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) noexcept {
  if (a.tower_ != b.tower_) return std::compare_three_way{}(a.tower_, b.tower_);
  return a.index() <=> b.index();
}

std::string FieldElement::to_string() const {
  if (tower_ == nullptr) return "<detached>";
  const unsigned m = tower_->m_;
  const unsigned e = tower_->e_;
  if (m * e == 1) return std::to_string(d_[0]);
  auto base_str = [&](const std::uint16_t* c, bool parens) {
    std::string s;
    for (unsigned t = 0; t < e; ++t) {
      if (c[t] == 0) continue;
      if (!s.empty()) s += "+";
      if (t == 0 || c[t] != 1) s += std::to_string(c[t]);
      if (t >= 1) s += "z";
      if (t >= 2) s += "^" + std::to_string(t);
    }
    if (s.empty()) s = "0";
    const bool compound = std::count_if(c, c + e, [](auto d) { return d != 0; }) > 1;
    return (parens && compound) ? "(" + s + ")" : s;
  };
  std::string out;
  for (unsigned j = 0; j < m; ++j) {
    const std::uint16_t* c = d_.data() + j * e;
    if (std::all_of(c, c + e, [](auto d) { return d == 0; })) continue;
    if (!out.empty()) out += "+";
    const bool unit = (c[0] == 1 && std::all_of(c + 1, c + e, [](auto d) { return d == 0; }));
    if (j == 0 || !unit) out += base_str(c, j > 0);
    if (j >= 1) out += "w";
    if (j >= 2) out += "^" + std::to_string(j);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw std::logic_error("unknown arithmetic operation");
}

FieldElement frobenius(const FieldElement& a, std::uint64_t e) { return a.frobenius(e); }

std::vector<FieldElement> enumerate_field(const FieldTower& k, std::uint64_t cap) {
  if (k.size() > cap) throw CapExceeded("field enumeration", k.size(), cap);
  std::vector<FieldElement> out;
  out.reserve(k.size());
  for (std::uint64_t i = 0; i < k.size(); ++i) out.push_back(FieldElement::from_index(k, i));
  return out;
}

Embedding::Embedding(const FieldTower& source, const FieldTower& target, std::uint64_t cap)
    : source_(&source), target_(&target) {
  if (!source.same_base(target)) throw NoEmbedding("fields have different constant fields F_q");
  if (target.degree() % source.degree() != 0) {
    throw NoEmbedding("degree " + std::to_string(source.degree()) + " does not divide " +
                      std::to_string(target.degree()));
  }
  if (&source == &target || source.degree() == 1) return;
  const auto& g = source.ext_modulus();
  for (const FieldElement& x : enumerate_field(target, cap)) {
    FieldElement acc = FieldElement::zero(target);
    for (std::size_t j = g.size(); j-- > 0;) acc = acc * x + FieldElement::from_base(target, g[j]);
    if (acc.is_zero()) {
      FieldElement pw = FieldElement::one(target);
      for (unsigned j = 0; j < source.degree(); ++j) {
        powers_.push_back(pw);
        pw = pw * x;
      }
      return;
    }
  }
  throw NoEmbedding("extension modulus has no root in the target field");
}

FieldElement Embedding::operator()(const FieldElement& a) const {
  if (&a.tower() != source_) throw TowerMismatch("element is not in the embedding's source field");
  if (source_ == target_) return a;
  const auto coords = a.coords();
  if (powers_.empty()) return FieldElement::from_base(*target_, coords[0]);
  FieldElement acc = FieldElement::zero(*target_);
  for (std::size_t j = 0; j < coords.size(); ++j) {
    acc += FieldElement::from_base(*target_, coords[j]) * powers_[j];
  }
  return acc;
}

FieldElement embed(const FieldElement& a, const FieldTower& super) { return Embedding(a.tower(), super)(a); }

std::vector<FieldElement> solve_power_equation(std::uint64_t n, const FieldElement& c, std::uint64_t cap) {
  if (n == 0) throw InvalidArgument("exponent must be positive");
  if (c.is_zero()) throw ZeroArgument("right-hand side of eps^N = c must be nonzero");
  const FieldTower& k = c.tower();
  const std::uint64_t order = k.size() - 1;
  const std::uint64_t g = std::gcd(n % order == 0 ? order : n % order, order);
  const bool solvable = c.pow(order / g).is_one();

  std::vector<FieldElement> out;
  for (const FieldElement& eps : enumerate_field(k, cap)) {
    if (!eps.is_zero() && eps.pow(n) == c) out.push_back(eps);
  }
  if (solvable != !out.empty() || (!out.empty() && out.size() != g)) {
    throw std::logic_error("power equation: exhaustive search disagrees with the solvability criterion");
  }
  return out;
}

}  // namespace coefchange
