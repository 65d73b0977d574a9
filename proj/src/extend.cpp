#include "coefchange/extend.hpp"

#include <algorithm>
#include <cstdint>
#include <thread>

namespace coefchange {

namespace {

bool solution_less(const ExtensionSolution& a, const ExtensionSolution& b) {
  return canonical_less(a.delta, b.delta);
}

ExtensionSolution make_solution(const SkewPoly& d) { return {d, d.coeff(0)}; }

void check_cap(const ExtensionProblem& prob, const SearchOptions& opt) {
  unsigned __int128 need = 1;
  for (int i = 0; i <= prob.target_rank && need <= opt.cap; ++i) need *= prob.field().size();
  if (need > opt.cap) {
    const auto shown = need > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(need);
    throw CapExceeded("extension candidate space over a field of size " + std::to_string(prob.field().size()),
                      shown, opt.cap);
  }
}

}  // namespace

ExtensionProblem::ExtensionProblem(DrinfeldModule base, CoverMap c)
    : base_module(std::move(base)), cover(std::move(c)), target_rank(0) {
  if (base_module.ring != RingTag::A) throw ShapeMismatch("extension problem expects a module over A");
  auto rep = verify_standard_form(base_module);
  if (!rep.passed()) throw InvalidArgument("base module is not in standard form: " + rep.failures().front());
  if (!cover.poly().tower().same_base(base_module.field()))
    throw TowerMismatch("cover and module have different constant fields");
  const int n = cover.degree();
  if (base_module.rank % n != 0)
    throw NonDivisibleRank("rank " + std::to_string(base_module.rank) + " is not divisible by cover degree " +
                           std::to_string(n));
  target_rank = base_module.rank / n;
}

DrinfeldModule ExtensionSolution::as_module() const { return DrinfeldModule::make(delta, RingTag::Aprime); }

std::vector<ExtensionSolution> enumerate_extensions(const ExtensionProblem& prob, const SearchOptions& opt) {
  check_cap(prob, opt);
  const FieldTower& k = prob.field();
  const int n = prob.cover.degree();
  const int rp = prob.target_rank;
  const int top = n * rp;
  const SkewPoly& phi = prob.base_module.gen_image;
  const auto elements = enumerate_field(k, opt.cap);

  // lead(delta')^(1 + q^r' + ... + q^((n-1)r')) = lead(phi(x)); the exponent only matters mod |K|-1
  const std::uint64_t order = k.size() - 1;
  std::uint64_t qr = 1 % order;
  for (int i = 0; i < rp; ++i) qr = static_cast<std::uint64_t>((unsigned __int128)qr * k.q() % order);
  std::uint64_t norm_exp = 0, pw = 1 % order;
  for (int t = 0; t < n; ++t) {
    norm_exp = (norm_exp + pw) % order;
    pw = static_cast<std::uint64_t>((unsigned __int128)pw * qr % order);
  }
  if (norm_exp == 0) norm_exp = order;

  // partial coefficient vectors, index i = coefficient of tau^i
  std::vector<std::vector<FieldElement>> frontier;
  for (const auto& a : solve_power_equation(norm_exp, phi.lead(), opt.cap)) {
    std::vector<FieldElement> v(rp + 1, FieldElement::zero(k));
    v[rp] = a;
    frontier.push_back(std::move(v));
  }
  // coefficient of tau^(top-s) in p(delta') depends only on a_{r'}, ..., a_{r'-s}
  for (int s = 1; s <= rp; ++s) {
    std::vector<std::vector<FieldElement>> next;
    for (const auto& v : frontier) {
      for (const auto& a : elements) {
        auto w = v;
        w[rp - s] = a;
        const SkewPoly img = substitute(prob.cover.poly(), SkewPoly(k, w));
        if (img.coeff(top - s) == phi.coeff(top - s)) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  std::vector<ExtensionSolution> out;
  for (const auto& v : frontier) {
    SkewPoly d(k, v);
    if (substitute(prob.cover.poly(), d) == phi) out.push_back(make_solution(d));
  }
  std::sort(out.begin(), out.end(), solution_less);
  return out;
}

std::vector<ExtensionSolution> brute_oracle(const ExtensionProblem& prob, const SearchOptions& opt) {
  check_cap(prob, opt);
  const FieldTower& k = prob.field();
  const int rp = prob.target_rank;
  const SkewPoly& phi = prob.base_module.gen_image;
  const auto elements = enumerate_field(k, opt.cap);
  const std::uint64_t q = k.size();
  std::uint64_t lower = 1;
  for (int i = 0; i < rp; ++i) lower *= q;

  // split by leading coefficient; each worker scans all lower tuples for its leads
  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(q - 1)));
  std::vector<std::vector<ExtensionSolution>> found(threads);
  auto work = [&](unsigned w) {
    for (std::uint64_t lead = 1 + w; lead < q; lead += threads) {
      for (std::uint64_t t = 0; t < lower; ++t) {
        std::vector<FieldElement> v(rp + 1, FieldElement::zero(k));
        v[rp] = elements[lead];
        std::uint64_t rest = t;
        for (int i = 0; i < rp; ++i) {
          v[i] = elements[rest % q];
          rest /= q;
        }
        SkewPoly d(k, std::move(v));
        if (substitute(prob.cover.poly(), d) == phi) found[w].push_back(make_solution(d));
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  std::vector<ExtensionSolution> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  std::sort(out.begin(), out.end(), solution_less);
  return out;
}

Partition extension_iso_classes(const ExtensionProblem& prob, const std::vector<ExtensionSolution>& sols) {
  const auto aut = aut_group(prob.base_module);
  std::vector<int> cls(sols.size(), -1);
  Partition out;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    if (cls[i] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    for (const auto& eps : aut.elements) {
      const ExtensionSolution img = make_solution(conjugate(sols[i].delta, eps));
      auto it = std::lower_bound(sols.begin(), sols.end(), img, solution_less);
      if (it == sols.end() || !(*it == img))
        throw std::logic_error("conjugation by an automorphism left the solution set");
      const auto j = static_cast<std::size_t>(it - sols.begin());
      if (cls[j] < 0) {
        cls[j] = id;
        out.back().push_back(j);
      } else if (cls[j] != id) {
        throw std::logic_error("conjugation orbits overlap");
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

Partition pairwise_iso_partition(const std::vector<ExtensionSolution>& sols) {
  std::vector<int> cls(sols.size(), -1);
  Partition out;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    if (cls[i] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.push_back({i});
    cls[i] = id;
    const auto mi = sols[i].as_module();
    for (std::size_t j = i + 1; j < sols.size(); ++j) {
      if (cls[j] >= 0) continue;
      if (!iso_solver(mi, sols[j].as_module()).empty()) {
        cls[j] = id;
        out.back().push_back(j);
      }
    }
  }
  return out;
}

ExtensionProblem base_change(const ExtensionProblem& prob, const Embedding& emb) {
  return ExtensionProblem(base_change(prob.base_module, emb), prob.cover);
}

std::vector<GaloisRow> galois_merge_report(const ExtensionProblem& prob, unsigned s_max, const SearchOptions& opt) {
  std::vector<GaloisRow> rows;
  for (unsigned s = 1; s <= s_max; ++s) {
    const FieldTower& l = prob.field().extension(s, opt.cap);
    const ExtensionProblem sub = base_change(prob, Embedding(prob.field(), l, opt.cap));
    const auto sols = enumerate_extensions(sub, opt);
    rows.push_back({s, sols.size(), extension_iso_classes(sub, sols).size()});
  }
  return rows;
}

}  // namespace coefchange
