#include "coefchange/cli.hpp"

#include <chrono>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "coefchange/extend.hpp"
#include "coefchange/io.hpp"

namespace coefchange {

namespace {

struct Options {
  bool json = false;
  bool text = false;
  unsigned threads = 1;
  std::optional<std::uint64_t> cap;
  bool timing = false;
  std::vector<std::string> files;
  std::string output;
  long shift = 0;
  // extend
  bool classes = false;
  unsigned galois = 0;
  bool cross_check = false;
  // isom / twist
  unsigned twist = 0;
  // motive
  std::optional<long> shtuka_level;
  // selftest
  std::uint64_t seed = 1;
  unsigned rounds = 20;
};

struct Input {
  std::string path;
  std::string digest;
  std::vector<Json> docs;
};

struct Outcome {
  Json result = Json::object();
  std::vector<std::string> text;
  VerificationReport verification;
};

std::string field_name(const FieldTower& k) { return "F_" + std::to_string(k.size()); }

Input load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  return {path, fnv1a_hex(bytes), expand_documents(parse_json(bytes, path))};
}

// Documents of all inputs, in command-line order.
struct Documents {
  std::vector<Json> all;

  std::vector<const Json*> objects() const {
    std::vector<const Json*> out;
    for (const auto& d : all) {
      const auto k = document_kind(d);
      if (k != "cover" && k != "field") out.push_back(&d);
    }
    return out;
  }
  const Json& object(std::size_t i = 0) const {
    auto o = objects();
    if (o.size() <= i) throw InvalidArgument("expected at least " + std::to_string(i + 1) + " input object(s)");
    return *o[i];
  }
  CoverMap cover(const FieldTower* context) const {
    for (const auto& d : all)
      if (document_kind(d) == "cover") return cover_from_json(d, context);
    throw InvalidArgument("no cover document given");
  }
};

const FieldTower* object_field(const Json& doc) { return &field_from_json(doc.at("field")); }

// ---- rendering ------------------------------------------------------------

void describe_module(std::vector<std::string>& t, const DrinfeldModule& m, const std::string& indent = "  ") {
  const std::string gen = m.ring == RingTag::A ? "x" : "y";
  t.push_back(indent + gen + " -> " + m.gen_image.to_string() + "  (rank " + std::to_string(m.rank) + ", over " +
              field_name(m.field()) + ")");
}

void describe_matrix(std::vector<std::string>& t, const std::string& label, const PolyMatrix& m,
                     const std::string& var, const std::string& indent) {
  t.push_back(indent + label + " = " + m.to_string(var));
}

std::string degs_string(const SplittingType& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.degs.size(); ++i) out += (i ? "," : "") + std::to_string(s.degs[i]);
  return out + ")";
}

void describe_ladder(std::vector<std::string>& t, const AbelianSheafLadder& L) {
  t.push_back("  abelian sheaf over " + field_name(L.field()) + ": rank " + std::to_string(L.rank) + ", dim " +
              std::to_string(L.dim) + ", period " + std::to_string(L.period) + ", twist " +
              std::to_string(L.twist) + ", characteristic " + L.characteristic.to_string());
  for (std::size_t i = 0; i < L.levels.size(); ++i) {
    const auto& lv = L.levels[i];
    t.push_back("  level " + std::to_string(i) + ": splitting " + degs_string(lv.split));
    describe_matrix(t, "Pi", lv.pi, L.var, "    ");
    describe_matrix(t, "tau", lv.tau, L.var, "    ");
  }
}

void describe_shtuka(std::vector<std::string>& t, const Shtuka& S) {
  t.push_back(std::string("  ") + (S.orientation == Orientation::right ? "right" : "left") + " shtuka over " +
              field_name(S.field()) + ": rank " + std::to_string(S.rank) + ", dim " + std::to_string(S.dim) +
              ", pole " + (S.pole ? S.pole->to_string() : std::string("inf")) + ", zero " + S.zero.to_string());
  t.push_back("  E " + degs_string(S.split_E) + ", E' " + degs_string(S.split_Eprime));
  describe_matrix(t, "J", S.J, S.var, "    ");
  describe_matrix(t, "T", S.T, S.var, "    ");
}

Json partition_to_json(const Partition& p) {
  Json a = Json::array();
  for (const auto& c : p) a.push_back(c);
  return a;
}

std::string partition_string(const Partition& p) {
  std::string out;
  for (const auto& c : p) {
    out += out.empty() ? "{" : " {";
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
    out += "}";
  }
  return out;
}

Json ladder_iso_to_json(const LadderIso& iso) {
  Json u = Json::array();
  for (const auto& m : iso.U) u.push_back(matrix_to_json(m));
  return Json{{"U", u}};
}

SemilinearOptions semilinear_options(const Options& o) {
  SemilinearOptions s;
  if (o.cap) s.cap = *o.cap;
  return s;
}

SearchOptions search_options(const Options& o) {
  SearchOptions s;
  if (o.cap) s.cap = *o.cap;
  s.threads = o.threads;
  return s;
}

std::uint64_t field_cap(const Options& o) { return o.cap ? *o.cap : kDefaultEnumerationCap; }

// ---- commands ---------------------------------------------------------------

Outcome cmd_verify(const Documents& docs) {
  Outcome out;
  Json items = Json::array();
  const FieldTower* context = nullptr;
  for (std::size_t i = 0; i < docs.all.size(); ++i) {
    const Json& d = docs.all[i];
    const std::string kind = document_kind(d);
    const std::string prefix = kind + "[" + std::to_string(i) + "]: ";
    VerificationReport rep;
    if (kind == "field") {
      const FieldTower& k = field_from_json(d);
      rep.add("field is well defined", true, field_name(k));
      context = &k;
    } else if (kind == "drinfeld_module") {
      const auto m = module_from_json(d);
      context = m.tower;
      rep = verify_standard_form(m);
    } else if (kind == "cover") {
      const auto c = cover_from_json(d, context);
      rep.add("cover is monic of positive degree", true, "degree " + std::to_string(c.degree()));
    } else if (kind == "abelian_sheaf") {
      const auto L = ladder_from_json(d);
      context = L.tower;
      rep = verify_abelian_sheaf(L);
    } else {
      const auto S = shtuka_from_json(d);
      context = S.tower;
      rep = verify_shtuka(S);
    }
    items.push_back(Json{{"kind", kind}, {"passed", rep.passed()}});
    out.verification.merge(rep, prefix);
  }
  out.result["documents"] = items;
  out.text.push_back("documents: " + std::to_string(docs.all.size()));
  return out;
}

Outcome cmd_push(const Documents& docs, const Options& o) {
  Outcome out;
  const Json& obj = docs.object();
  const std::string kind = document_kind(obj);
  const FieldTower* k = object_field(obj);
  const CoverMap cover = docs.cover(k);
  out.text.push_back("cover: x = " + cover.poly().to_string("y"));
  if (kind == "drinfeld_module") {
    const auto m = module_from_json(obj);
    if (m.ring != RingTag::Aprime) throw InvalidArgument("restriction of coefficients needs a module over A' = F_q[y]");
    out.verification.merge(verify_standard_form(m), "input: ");
    const auto r = restrict(m, cover);
    out.verification.merge(verify_standard_form(r), "output: ");
    out.result["document"] = module_to_json(r);
    out.text.push_back("restricted module:");
    describe_module(out.text, r);
  } else if (kind == "abelian_sheaf") {
    const auto L = ladder_from_json(obj);
    out.verification.merge(verify_abelian_sheaf(L), "input: ");
    const auto P = shift_ladder(pushforward(L, cover), o.shift);
    out.verification.merge(verify_abelian_sheaf(P), "output: ");
    out.result["document"] = ladder_to_json(P);
    out.text.push_back(o.shift ? "pushforward, levels shifted by " + std::to_string(o.shift) + ":" : "pushforward:");
    describe_ladder(out.text, P);
  } else if (kind == "shtuka") {
    const auto S = shtuka_from_json(obj);
    out.verification.merge(verify_shtuka(S), "input: ");
    const auto P = pushforward_shtuka(S, cover);
    out.verification.merge(verify_shtuka(P), "output: ");
    out.result["document"] = shtuka_to_json(P);
    out.text.push_back("pushforward:");
    describe_shtuka(out.text, P);
  } else {
    throw InvalidArgument("cannot push a \"" + kind + "\" document");
  }
  return out;
}

Outcome cmd_extend(const Documents& docs, const Options& o) {
  Outcome out;
  const auto m = module_from_json(docs.object());
  const CoverMap cover = docs.cover(m.tower);
  out.verification.merge(verify_standard_form(m), "input: ");
  const ExtensionProblem prob(m, cover);
  const auto sopt = search_options(o);
  const auto sols = enumerate_extensions(prob, sopt);

  bool all_lift = true;
  Json sj = Json::array();
  for (const auto& s : sols) {
    sj.push_back(skew_to_json(s.delta));
    if (restrict(s.as_module(), cover).gen_image != m.gen_image) all_lift = false;
  }
  out.verification.add("every solution satisfies p(phi'(y)) = phi(x)", all_lift);
  const auto classes = extension_iso_classes(prob, sols);
  const auto aut = aut_group(m);
  out.result["solutions"] = sj;
  out.result["classes"] = partition_to_json(classes);
  out.result["aut_order"] = aut.elements.size();

  out.text.push_back("cover: x = " + cover.poly().to_string("y") + ", target rank " +
                     std::to_string(prob.target_rank));
  if (sols.empty()) {
    out.text.push_back("no extensions");
  } else {
    out.text.push_back("solutions: " + std::to_string(sols.size()));
    for (std::size_t i = 0; i < sols.size(); ++i)
      out.text.push_back("  [" + std::to_string(i) + "] y -> " + sols[i].delta.to_string());
    out.text.push_back("classes: " + std::to_string(classes.size()) + "  " + partition_string(classes));
  }
  out.text.push_back("aut order: " + std::to_string(aut.elements.size()));

  if (o.classes && !sols.empty()) {
    const auto pairwise = pairwise_iso_partition(sols);
    out.verification.add("Aut orbits agree with pairwise isomorphism classes", pairwise == classes,
                         partition_string(pairwise));
    Json reps = Json::array();
    for (const auto& c : classes) reps.push_back(skew_to_json(sols[c.front()].delta));
    out.result["class_representatives"] = reps;
  }
  if (o.galois > 0) {
    const auto rows = galois_merge_report(prob, o.galois, sopt);
    Json g = Json::array();
    out.text.push_back("over extensions of degree s:");
    for (const auto& r : rows) {
      g.push_back(Json{{"s", r.s}, {"solutions", r.solutions}, {"classes", r.classes}});
      out.text.push_back("  s=" + std::to_string(r.s) + ": " + std::to_string(r.solutions) + " solutions, " +
                         std::to_string(r.classes) + " classes");
    }
    out.result["galois"] = g;
  }
  if (o.cross_check) {
    const auto brute = brute_oracle(prob, sopt);
    const bool same = brute == sols;
    out.verification.add("staged solver agrees with the exhaustive scan", same,
                         std::to_string(brute.size()) + " solutions by exhaustive scan");
    out.result["exhaustive_scan_agrees"] = same;
  }
  return out;
}

// Smallest s <= s_max over whose degree-s extension `iso_exists` holds.
template <typename F>
std::optional<unsigned> first_degree(const FieldTower& k, unsigned s_max, std::uint64_t cap, F iso_exists) {
  for (unsigned s = 1; s <= s_max; ++s) {
    Embedding emb(k, k.extension(s, cap), cap);
    if (iso_exists(emb)) return s;
  }
  return std::nullopt;
}

std::optional<unsigned> minimal_twist(const Json& d1, const Json& d2, unsigned s_max, const Options& o) {
  const std::string kind = document_kind(d1);
  if (kind != document_kind(d2)) throw InvalidArgument("cannot compare a \"" + kind + "\" with a \"" + document_kind(d2) + "\"");
  auto sopt = semilinear_options(o);
  sopt.limit = 1;
  if (kind == "drinfeld_module")
    return twist_min_degree(module_from_json(d1), module_from_json(d2), s_max, field_cap(o));
  if (kind == "abelian_sheaf") {
    const auto L1 = ladder_from_json(d1), L2 = ladder_from_json(d2);
    return first_degree(L1.field(), s_max, field_cap(o), [&](const Embedding& e) {
      return !semilinear_iso_solver(base_change(L1, e), base_change(L2, e), sopt).empty();
    });
  }
  if (kind == "shtuka") {
    const auto S1 = shtuka_from_json(d1), S2 = shtuka_from_json(d2);
    return first_degree(S1.field(), s_max, field_cap(o), [&](const Embedding& e) {
      return !shtuka_iso_solver(base_change(S1, e), base_change(S2, e), sopt).empty();
    });
  }
  throw InvalidArgument("cannot compare \"" + kind + "\" documents");
}

void report_twist(Outcome& out, std::optional<unsigned> s, unsigned s_max) {
  out.result["twist_degree"] = s ? Json(*s) : Json(nullptr);
  out.result["twist_search_max"] = s_max;
}

Outcome cmd_isom(const Documents& docs, const Options& o) {
  Outcome out;
  const Json& d1 = docs.object(0);
  const Json& d2 = docs.object(1);
  const std::string kind = document_kind(d1);
  if (kind != document_kind(d2)) throw InvalidArgument("cannot compare a \"" + kind + "\" with a \"" + document_kind(d2) + "\"");
  std::size_t found = 0;
  Json w = Json::array();
  if (kind == "drinfeld_module") {
    const auto m1 = module_from_json(d1), m2 = module_from_json(d2);
    const auto eps = iso_solver(m1, m2);
    bool ok = true;
    for (const auto& e : eps) {
      w.push_back(element_to_json(e));
      if (SkewPoly::constant(e) * m1.gen_image != m2.gen_image * SkewPoly::constant(e)) ok = false;
    }
    out.verification.add("every witness satisfies eps phi1 = phi2 eps", ok);
    found = eps.size();
    if (found > 0) {
      out.text.push_back("isomorphisms: " + std::to_string(found));
      for (const auto& e : eps) out.text.push_back("  eps = " + e.to_string());
    }
  } else if (kind == "abelian_sheaf") {
    const auto L1 = ladder_from_json(d1), L2 = ladder_from_json(d2);
    const auto isos = semilinear_iso_solver(L1, L2, semilinear_options(o));
    bool ok = true;
    for (const auto& iso : isos) {
      w.push_back(ladder_iso_to_json(iso));
      ok = ok && check_ladder_iso(L1, L2, iso);
    }
    out.verification.add("every witness satisfies the ladder isomorphism equations", ok);
    found = isos.size();
    if (found > 0) {
      out.text.push_back("isomorphisms: " + std::to_string(found));
      for (std::size_t i = 0; i < isos.front().U.size(); ++i)
        describe_matrix(out.text, "U_" + std::to_string(i), isos.front().U[i], L1.var, "  first witness ");
    }
  } else if (kind == "shtuka") {
    const auto S1 = shtuka_from_json(d1), S2 = shtuka_from_json(d2);
    const auto isos = shtuka_iso_solver(S1, S2, semilinear_options(o));
    bool ok = true;
    for (const auto& iso : isos) {
      w.push_back(Json{{"U", matrix_to_json(iso.U)}, {"Uprime", matrix_to_json(iso.Uprime)}});
      ok = ok && check_shtuka_iso(S1, S2, iso);
    }
    out.verification.add("every witness satisfies the shtuka isomorphism equations", ok);
    found = isos.size();
    if (found > 0) {
      out.text.push_back("isomorphisms: " + std::to_string(found));
      describe_matrix(out.text, "U", isos.front().U, S1.var, "  first witness ");
      describe_matrix(out.text, "U'", isos.front().Uprime, S1.var, "  first witness ");
    }
  } else {
    throw InvalidArgument("cannot compare \"" + kind + "\" documents");
  }
  out.result["count"] = found;
  out.result["witnesses"] = w;
  if (found == 0) {
    // modules are cheap to twist, so they get a default search range
    const unsigned s_max = o.twist > 0 ? o.twist : (kind == "drinfeld_module" ? 4u : 0u);
    if (s_max == 0) {
      out.text.push_back("no isomorphism");
    } else {
      const auto s = minimal_twist(d1, d2, s_max, o);
      report_twist(out, s, s_max);
      out.text.push_back(s ? "no isomorphism; minimal twist degree " + std::to_string(*s)
                           : "no isomorphism; none over extensions of degree <= " + std::to_string(s_max));
    }
  }
  return out;
}

Outcome cmd_twist(const Documents& docs, const Options& o) {
  Outcome out;
  const unsigned s_max = o.twist > 0 ? o.twist : 4;
  const auto s = minimal_twist(docs.object(0), docs.object(1), s_max, o);
  report_twist(out, s, s_max);
  out.text.push_back(s ? "minimal twist degree " + std::to_string(*s)
                       : "not isomorphic over extensions of degree <= " + std::to_string(s_max));
  return out;
}

Outcome cmd_aut(const Documents& docs, const Options& o) {
  Outcome out;
  const Json& d = docs.object();
  const std::string kind = document_kind(d);
  if (kind == "drinfeld_module") {
    const auto m = module_from_json(d);
    out.verification.merge(verify_standard_form(m), "input: ");
    const auto g = aut_group(m);
    out.verification.add("contains the identity", g.has_identity);
    out.verification.add("closed under multiplication", g.closed_under_mul);
    out.verification.add("closed under inverses", g.closed_under_inverse);
    Json e = Json::array();
    for (const auto& a : g.elements) e.push_back(element_to_json(a));
    out.result["order"] = g.elements.size();
    out.result["elements"] = e;
    out.text.push_back("aut order: " + std::to_string(g.elements.size()));
    std::string line = "  elements:";
    for (const auto& a : g.elements) line += " " + a.to_string();
    out.text.push_back(line);
  } else if (kind == "abelian_sheaf") {
    const auto L = ladder_from_json(d);
    out.verification.merge(verify_abelian_sheaf(L), "input: ");
    const auto isos = semilinear_iso_solver(L, L, semilinear_options(o));
    bool ok = true;
    for (const auto& iso : isos) ok = ok && check_ladder_iso(L, L, iso);
    out.verification.add("every automorphism satisfies the ladder equations", ok);
    out.result["order"] = isos.size();
    out.text.push_back("aut order: " + std::to_string(isos.size()));
  } else if (kind == "shtuka") {
    const auto S = shtuka_from_json(d);
    out.verification.merge(verify_shtuka(S), "input: ");
    const auto isos = shtuka_iso_solver(S, S, semilinear_options(o));
    bool ok = true;
    for (const auto& iso : isos) ok = ok && check_shtuka_iso(S, S, iso);
    out.verification.add("every automorphism satisfies the shtuka equations", ok);
    out.result["order"] = isos.size();
    out.text.push_back("aut order: " + std::to_string(isos.size()));
  } else {
    throw InvalidArgument("no automorphism group for \"" + kind + "\" documents");
  }
  return out;
}

Outcome cmd_motive(const Documents& docs, const Options& o) {
  Outcome out;
  const auto m = module_from_json(docs.object());
  out.verification.merge(verify_standard_form(m), "input: ");
  const auto L = from_drinfeld(m);
  out.verification.merge(verify_abelian_sheaf(L), "sheaf: ");
  if (o.shtuka_level) {
    const auto S = from_abelian_sheaf(L, *o.shtuka_level);
    out.verification.merge(verify_shtuka(S), "shtuka: ");
    out.result["document"] = shtuka_to_json(S);
    out.text.push_back("shtuka at level " + std::to_string(*o.shtuka_level) + ":");
    describe_shtuka(out.text, S);
  } else {
    out.result["document"] = ladder_to_json(L);
    out.text.push_back("abelian sheaf:");
    describe_ladder(out.text, L);
  }
  return out;
}

Outcome cmd_structures(const Documents& docs, const Options& o) {
  Outcome out;
  const auto L = ladder_from_json(docs.object());
  const CoverMap cover = docs.cover(L.tower);
  out.verification.merge(verify_abelian_sheaf(L), "input: ");
  const auto sopt = semilinear_options(o);
  const auto st = enumerate_sheaf_module_structures(L, cover, sopt);
  bool ok = true;
  Json sj = Json::array();
  for (const auto& s : st) {
    ok = ok && check_module_structure(L, cover, s);
    Json y = Json::array();
    for (const auto& m : s.Y) y.push_back(matrix_to_json(m));
    sj.push_back(Json{{"Y", y}});
  }
  out.verification.add("every structure satisfies the module-structure equations", ok);

  // classes: join each structure to the first earlier one it is isomorphic to
  std::vector<std::size_t> cls(st.size());
  std::iota(cls.begin(), cls.end(), 0);
  for (std::size_t i = 0; i < st.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (cls[j] != j) continue;
      auto one = sopt;
      one.limit = 1;
      if (!structure_iso_solver(L, st[j], st[i], one).empty()) {
        cls[i] = j;
        break;
      }
    }
  Partition classes;
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (cls[i] == i) classes.push_back({i});
    else
      for (auto& c : classes)
        if (c.front() == cls[i]) c.push_back(i);
  }
  out.result["structures"] = sj;
  out.result["classes"] = partition_to_json(classes);
  out.text.push_back("cover: x = " + cover.poly().to_string("y"));
  if (st.empty()) {
    out.text.push_back("no module structures");
  } else {
    out.text.push_back("module structures: " + std::to_string(st.size()));
    for (std::size_t i = 0; i < st.size(); ++i)
      for (std::size_t l = 0; l < st[i].Y.size(); ++l)
        describe_matrix(out.text, "Y_" + std::to_string(l), st[i].Y[l], L.var, "  [" + std::to_string(i) + "] ");
    out.text.push_back("classes: " + std::to_string(classes.size()) + "  " + partition_string(classes));
  }
  return out;
}

// ---- selftest ---------------------------------------------------------------

Outcome cmd_selftest(const Options& o) {
  Outcome out;
  std::mt19937_64 rng(o.seed);
  const std::vector<const FieldTower*> fields = {
      &FieldTower::prime_field(2), &FieldTower::prime_field(3), &FieldTower::get(2, {0, 1}, {{1}, {1}, {1}}),
      &FieldTower::get(3, {0, 1}, {{1}, {0}, {1}})};
  auto pick = [&](const FieldTower& k) { return FieldElement::from_index(k, rng() % k.size()); };
  auto pick_unit = [&](const FieldTower& k) { return FieldElement::from_index(k, 1 + rng() % (k.size() - 1)); };

  std::size_t field_bad = 0, skew_bad = 0, ext_bad = 0, len_bad = 0;
  for (unsigned round = 0; round < o.rounds; ++round) {
    const FieldTower& k = *fields[rng() % fields.size()];
    const auto a = pick(k), b = pick(k), c = pick(k);
    if ((a * b) * c != a * (b * c) || a * (b + c) != a * b + a * c) ++field_bad;
    if (!a.is_zero() && a * a.inverse() != FieldElement::one(k)) ++field_bad;

    // evaluation of a product is composition of evaluations
    const SkewPoly f(k, {pick(k), pick(k), pick(k)}), g(k, {pick(k), pick(k)});
    if (evaluate_additive(f * g, c) != evaluate_additive(f, evaluate_additive(g, c))) ++skew_bad;

    // staged extension solver against the exhaustive scan, on a restricted module
    const FieldTower& fq = k.base_field();
    std::vector<FieldElement> pc{pick(fq), pick(fq), FieldElement::one(fq)};
    const CoverMap cover{Poly(fq, pc)};
    const int rp = 1 + static_cast<int>(rng() % 2);
    std::vector<FieldElement> dc;
    for (int i = 0; i < rp; ++i) dc.push_back(pick(k));
    dc.push_back(pick_unit(k));
    const auto mp = DrinfeldModule::make(SkewPoly(k, dc), RingTag::Aprime);
    const ExtensionProblem prob(restrict(mp, cover), cover);
    if (prob.target_rank != rp || enumerate_extensions(prob) != brute_oracle(prob)) ++ext_bad;

    // cokernel length against the quotient dimension
    const FieldTower& kp = *fields[rng() % 2];
    std::vector<std::vector<Poly>> rows(2, std::vector<Poly>(2, Poly::constant(FieldElement::zero(kp))));
    for (auto& row : rows)
      for (auto& e : row) {
        std::vector<FieldElement> cs;
        const int d = static_cast<int>(rng() % 3);
        for (int i = 0; i <= d; ++i) cs.push_back(pick(kp));
        e = Poly(kp, cs);
      }
    const auto m = PolyMatrix::from_rows(kp, rows);
    const auto lens = cokernel_lengths(m, {0, 0}, {2, 2});
    if (lens.injective && lens.finite != quotient_dimension(m)) ++len_bad;
  }
  out.verification.add("field axioms on random triples", field_bad == 0, std::to_string(field_bad) + " failures");
  out.verification.add("additive evaluation is multiplicative", skew_bad == 0, std::to_string(skew_bad) + " failures");
  out.verification.add("staged extension solver matches the exhaustive scan", ext_bad == 0,
                       std::to_string(ext_bad) + " failures");
  out.verification.add("cokernel length matches quotient dimension", len_bad == 0,
                       std::to_string(len_bad) + " failures");
  out.result["seed"] = o.seed;
  out.result["rounds"] = o.rounds;
  out.text.push_back("seed " + std::to_string(o.seed) + ", " + std::to_string(o.rounds) + " rounds");
  return out;
}

// ---- driver -----------------------------------------------------------------

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const SchemaError*>(&e)) return "SchemaError";
  if (dynamic_cast<const CapExceeded*>(&e)) return "CapExceeded";
  if (dynamic_cast<const ShapeMismatch*>(&e)) return "ShapeMismatch";
  if (dynamic_cast<const NonDivisibleRank*>(&e)) return "NonDivisibleRank";
  if (dynamic_cast<const TowerMismatch*>(&e)) return "TowerMismatch";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return "SchemaError";
  return "InternalError";
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

void emit(std::ostream& out, const Options& o, const std::string& command, const std::vector<std::string>& args,
          const std::vector<Input>& inputs, const Outcome& res, std::optional<double> ms) {
  if (o.json) {
    Json r;
    r["command"] = command;
    r["arguments"] = args;
    Json in = Json::array();
    for (const auto& i : inputs) in.push_back(Json{{"path", i.path}, {"fnv1a", i.digest}});
    r["inputs"] = in;
    r["result"] = res.result;
    Json v = Json::array();
    for (const auto& c : res.verification.clauses) v.push_back(Json{{"clause", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    r["verification"] = v;
    r["status"] = res.verification.passed() ? "pass" : "fail";
    if (ms) r["timing_ms"] = *ms;
    out << r.dump(2) << "\n";
    return;
  }
  out << "command: coefchange " << join_args(args) << "\n";
  for (const auto& i : inputs) out << "input: " << i.path << " fnv1a " << i.digest << "\n";
  for (const auto& l : res.text) out << l << "\n";
  const auto& cl = res.verification.clauses;
  out << "verification: " << (res.verification.passed() ? "pass" : "FAIL") << " (" << cl.size() << " clauses)\n";
  for (const auto& c : cl) {
    out << (c.ok ? "  ok   " : "  FAIL ") << c.name;
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    out << "\n";
  }
  if (ms) out << "time: " << *ms << " ms\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Drinfeld modules, abelian sheaves and shtukas over finite fields"};
  app.name("coefchange");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "machine-readable report");
  app.add_flag("--text", o.text, "human-readable report (default)");
  app.add_option("--threads", o.threads, "worker threads for candidate scans")->check(CLI::PositiveNumber);
  app.add_option("--cap", o.cap, "enumeration cap");
  app.add_flag("--timing", o.timing, "append wall-clock time (breaks byte-stability)");

  auto files = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("files", o.files, what)->required()->check(CLI::ExistingFile);
  };
  auto* verify = app.add_subcommand("verify", "check every axiom of the given documents");
  files(verify, "documents or jobs");
  auto* restrict_cmd = app.add_subcommand("restrict", "restriction of coefficients of a module along a cover");
  files(restrict_cmd, "module and cover documents");
  auto* push = app.add_subcommand("push", "pushforward of a module, ladder or shtuka along a cover");
  files(push, "object and cover documents");
  for (auto* s : {restrict_cmd, push}) s->add_option("-o,--output", o.output, "write the produced document here");
  push->add_option("--shift", o.shift, "re-index a pushed ladder: level i of the output is level i + s");
  auto* extend = app.add_subcommand("extend", "all A'-module structures extending an A-module along a cover");
  files(extend, "module and cover documents");
  extend->add_flag("--classes", o.classes, "cross-check classes and list representatives");
  extend->add_option("--galois", o.galois, "tabulate over extensions of degree 1..s");
  extend->add_flag("--cross-check", o.cross_check, "compare with the exhaustive scan");
  auto* isom = app.add_subcommand("isom", "isomorphisms between two objects");
  files(isom, "two documents");
  isom->add_option("--twist", o.twist, "if none, search extensions up to this degree");
  auto* aut = app.add_subcommand("aut", "automorphism group");
  files(aut, "a document");
  auto* twist = app.add_subcommand("twist", "smallest extension degree making two objects isomorphic");
  files(twist, "two documents");
  twist->add_option("--max", o.twist, "largest degree tried (default 4)");
  auto* motive = app.add_subcommand("motive", "abelian sheaf (or shtuka) of a Drinfeld module");
  files(motive, "a module document");
  motive->add_option("--shtuka", o.shtuka_level, "emit the shtuka at this level instead");
  motive->add_option("-o,--output", o.output, "write the produced document here");
  auto* structures = app.add_subcommand("sheaf-structures", "module structures on a ladder along a cover");
  files(structures, "ladder and cover documents");
  auto* selftest = app.add_subcommand("selftest", "randomized property checks");
  selftest->add_option("--seed", o.seed, "random seed");
  selftest->add_option("--rounds", o.rounds, "number of rounds");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream so, se;
    const int code = app.exit(e, so, se);
    out << so.str();
    err << se.str();
    return code == 0 ? kExitOk : kExitInputError;
  }
  if (o.json && o.text) {
    err << "error: --json and --text are exclusive\n";
    return kExitInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    std::vector<Input> inputs;
    Documents docs;
    for (const auto& f : o.files) {
      inputs.push_back(load(f));
      for (const auto& d : inputs.back().docs) docs.all.push_back(d);
    }
    Outcome res;
    if (command == "verify") res = cmd_verify(docs);
    else if (command == "restrict" || command == "push") res = cmd_push(docs, o);
    else if (command == "extend") res = cmd_extend(docs, o);
    else if (command == "isom") res = cmd_isom(docs, o);
    else if (command == "aut") res = cmd_aut(docs, o);
    else if (command == "twist") res = cmd_twist(docs, o);
    else if (command == "motive") res = cmd_motive(docs, o);
    else if (command == "sheaf-structures") res = cmd_structures(docs, o);
    else res = cmd_selftest(o);

    if (!o.output.empty() && res.result.contains("document")) {
      std::ofstream f(o.output, std::ios::binary);
      if (!f) throw InvalidArgument("cannot write " + o.output);
      f << res.result["document"].dump(2) << "\n";
    }
    std::optional<double> ms;
    if (o.timing)
      ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(out, o, command, args, inputs, res, ms);
    return res.verification.passed() ? kExitOk : kExitVerificationFailed;
  } catch (const std::exception& e) {
    const std::string kind = error_kind(e);
    if (o.json) {
      Json r;
      r["command"] = command;
      r["arguments"] = args;
      r["error"] = Json{{"kind", kind}, {"message", e.what()}};
      out << r.dump(2) << "\n";
    }
    err << "error (" << kind << "): " << e.what() << "\n";
    return kind == "CapExceeded" ? kExitCapExceeded : kExitInputError;
  }
}

}  // namespace coefchange
