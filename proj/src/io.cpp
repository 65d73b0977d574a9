#include "coefchange/io.hpp"

#include <cstdio>

namespace coefchange {

namespace {

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing \"" + key + "\"");
  return *it;
}

int need_int(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number_integer()) throw SchemaError(where + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

const Json& need_array(const Json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array");
  return v;
}

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

FieldTower::BaseCoeff digits_from_json(const Json& j, std::uint32_t p, unsigned e, const std::string& where) {
  FieldTower::BaseCoeff d;
  if (j.is_number_integer()) {
    // an integer names the prime-field element
    d.push_back(reduce(j.get<std::int64_t>(), p));
    return d;
  }
  if (!j.is_array()) throw SchemaError(where + ": expected an integer or a digit array");
  if (j.size() > e) throw SchemaError(where + ": more than " + std::to_string(e) + " digits");
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw SchemaError(where + ": digits must be integers");
    d.push_back(reduce(x.get<std::int64_t>(), p));
  }
  return d;
}

Json digits_to_json(const FieldTower::BaseCoeff& d, unsigned e) {
  if (e == 1) return d.empty() ? 0 : d[0];
  Json a = Json::array();
  for (unsigned t = 0; t < e; ++t) a.push_back(t < d.size() ? d[t] : 0);
  return a;
}

const FieldTower& document_field(const Json& doc, const std::string& where) {
  return field_from_json(need(doc, "field", where));
}

void expect_kind(const Json& doc, const std::string& kind) {
  const std::string k = document_kind(doc);
  if (k != kind) throw SchemaError("expected a \"" + kind + "\" document, got \"" + k + "\"");
}

SplittingType split_from_json(const Json& j, const std::string& where) {
  SplittingType s;
  for (const auto& x : need_array(j, where)) {
    if (!x.is_number_integer()) throw SchemaError(where + ": splitting degrees must be integers");
    s.degs.push_back(x.get<int>());
  }
  return s;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // the library message already carries line and column
    throw ParseError(source + ": " + e.what());
  }
}

const FieldTower& field_from_json(const Json& j) {
  const std::string where = "field";
  const int p = need_int(j, "p", where);
  if (p < 2) throw InvalidArgument("field characteristic must be a prime");
  std::vector<std::uint32_t> base{0, 1};
  if (j.contains("base_modulus")) {
    base.clear();
    for (const auto& x : need_array(j["base_modulus"], where + ".base_modulus")) {
      if (!x.is_number_integer()) throw SchemaError(where + ".base_modulus: coefficients must be integers");
      base.push_back(reduce(x.get<std::int64_t>(), static_cast<std::uint32_t>(p)));
    }
  }
  const unsigned e = base.empty() ? 1 : static_cast<unsigned>(base.size() - 1);
  std::vector<FieldTower::BaseCoeff> ext{{0}, {1}};
  if (j.contains("ext_modulus")) {
    ext.clear();
    for (const auto& x : need_array(j["ext_modulus"], where + ".ext_modulus"))
      ext.push_back(digits_from_json(x, static_cast<std::uint32_t>(p), e, where + ".ext_modulus"));
  }
  return FieldTower::get(static_cast<std::uint32_t>(p), base, ext);
}

Json field_to_json(const FieldTower& k) {
  Json j;
  j["p"] = k.characteristic();
  j["base_modulus"] = k.base_modulus();
  Json ext = Json::array();
  for (const auto& c : k.ext_modulus()) ext.push_back(digits_to_json(c, k.base_degree()));
  j["ext_modulus"] = ext;
  return j;
}

FieldElement element_from_json(const FieldTower& k, const Json& j) {
  const std::string where = "element";
  if (j.is_number_integer()) return FieldElement::from_int(k, j.get<std::int64_t>());
  if (!j.is_array()) throw SchemaError(where + ": expected an integer or an array");
  const std::uint32_t p = k.characteristic();
  if (k.degree() == 1) return FieldElement::from_base(k, digits_from_json(j, p, k.base_degree(), where));
  if (j.size() > k.degree()) throw SchemaError(where + ": more than " + std::to_string(k.degree()) + " coordinates");
  std::vector<FieldTower::BaseCoeff> coords;
  for (const auto& c : j) coords.push_back(digits_from_json(c, p, k.base_degree(), where));
  return FieldElement::from_coords(k, coords);
}

Json element_to_json(const FieldElement& a) {
  const FieldTower& k = a.tower();
  const auto coords = a.coords();
  if (k.degree() == 1) return digits_to_json(coords[0], k.base_degree());
  Json out = Json::array();
  for (const auto& c : coords) out.push_back(digits_to_json(c, k.base_degree()));
  return out;
}

Poly poly_from_json(const FieldTower& k, const Json& j) {
  std::vector<FieldElement> c;
  for (const auto& x : need_array(j, "polynomial")) c.push_back(element_from_json(k, x));
  return Poly(k, std::move(c));
}

Json poly_to_json(const Poly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(element_to_json(c));
  return a;
}

SkewPoly skew_from_json(const FieldTower& k, const Json& j) {
  std::vector<FieldElement> c;
  for (const auto& x : need_array(j, "skew polynomial")) c.push_back(element_from_json(k, x));
  return SkewPoly(k, std::move(c));
}

Json skew_to_json(const SkewPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(element_to_json(c));
  return a;
}

PolyMatrix matrix_from_json(const FieldTower& k, const Json& j) {
  std::vector<std::vector<Poly>> rows;
  for (const auto& row : need_array(j, "matrix")) {
    rows.emplace_back();
    for (const auto& e : need_array(row, "matrix row")) rows.back().push_back(poly_from_json(k, e));
  }
  return PolyMatrix::from_rows(k, rows);
}

Json matrix_to_json(const PolyMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(poly_to_json(m(i, j)));
    a.push_back(row);
  }
  return a;
}

std::string document_kind(const Json& doc) {
  const Json& k = need(doc, "kind", "document");
  if (!k.is_string()) throw SchemaError("document: \"kind\" must be a string");
  const std::string s = k.get<std::string>();
  static const char* known[] = {"field", "drinfeld_module", "cover", "abelian_sheaf", "shtuka", "job"};
  for (const char* x : known)
    if (s == x) return s;
  throw SchemaError("document: unknown kind \"" + s + "\"");
}

DrinfeldModule module_from_json(const Json& doc) {
  expect_kind(doc, "drinfeld_module");
  const std::string where = "drinfeld_module";
  const FieldTower& k = document_field(doc, where);
  DrinfeldModule m;
  m.tower = &k;
  const std::string ring = doc.value("ring", std::string("A"));
  if (ring == "A") m.ring = RingTag::A;
  else if (ring == "Aprime") m.ring = RingTag::Aprime;
  else throw SchemaError(where + ": \"ring\" must be \"A\" or \"Aprime\"");
  m.gen_image = skew_from_json(k, need(doc, "gen_image", where));
  m.rank = doc.contains("rank") ? need_int(doc, "rank", where) : std::max(m.gen_image.degree(), 0);
  m.characteristic =
      doc.contains("characteristic") ? element_from_json(k, doc["characteristic"]) : m.gen_image.coeff(0);
  return m;
}

Json module_to_json(const DrinfeldModule& m) {
  Json j;
  j["kind"] = "drinfeld_module";
  j["field"] = field_to_json(m.field());
  j["ring"] = m.ring == RingTag::A ? "A" : "Aprime";
  j["gen_image"] = skew_to_json(m.gen_image);
  j["rank"] = m.rank;
  j["characteristic"] = element_to_json(m.characteristic);
  return j;
}

CoverMap cover_from_json(const Json& doc, const FieldTower* context) {
  expect_kind(doc, "cover");
  const std::string where = "cover";
  const FieldTower* k = context;
  if (doc.contains("field")) k = &document_field(doc, where);
  if (k == nullptr) throw SchemaError(where + ": no \"field\" given and no other document fixes the field");
  const FieldTower& fq = k->base_field();
  return CoverMap(poly_from_json(fq, need(doc, "p_poly", where)));
}

Json cover_to_json(const CoverMap& c) {
  Json j;
  j["kind"] = "cover";
  j["field"] = field_to_json(c.poly().tower());
  j["p_poly"] = poly_to_json(c.poly());
  return j;
}

AbelianSheafLadder ladder_from_json(const Json& doc) {
  expect_kind(doc, "abelian_sheaf");
  const std::string where = "abelian_sheaf";
  const FieldTower& k = document_field(doc, where);
  AbelianSheafLadder L;
  L.tower = &k;
  L.rank = need_int(doc, "rank", where);
  L.dim = need_int(doc, "dim", where);
  L.period = need_int(doc, "period", where);
  L.twist = need_int(doc, "twist", where);
  L.characteristic = element_from_json(k, need(doc, "characteristic", where));
  L.var = doc.value("var", std::string("x"));
  for (const auto& lv : need_array(need(doc, "levels", where), where + ".levels")) {
    L.levels.push_back({split_from_json(need(lv, "splits", where + ".levels"), where + ".splits"),
                        matrix_from_json(k, need(lv, "Pi", where + ".levels")),
                        matrix_from_json(k, need(lv, "tau", where + ".levels"))});
  }
  if (L.period < 1 || L.levels.size() != static_cast<std::size_t>(L.period))
    throw SchemaError(where + ": number of levels must equal the period");
  return L;
}

Json ladder_to_json(const AbelianSheafLadder& L) {
  Json j;
  j["kind"] = "abelian_sheaf";
  j["field"] = field_to_json(L.field());
  j["rank"] = L.rank;
  j["dim"] = L.dim;
  j["period"] = L.period;
  j["twist"] = L.twist;
  j["characteristic"] = element_to_json(L.characteristic);
  j["var"] = L.var;
  Json levels = Json::array();
  for (const auto& lv : L.levels) {
    Json o;
    o["splits"] = lv.split.degs;
    o["Pi"] = matrix_to_json(lv.pi);
    o["tau"] = matrix_to_json(lv.tau);
    levels.push_back(o);
  }
  j["levels"] = levels;
  return j;
}

Shtuka shtuka_from_json(const Json& doc) {
  expect_kind(doc, "shtuka");
  const std::string where = "shtuka";
  const FieldTower& k = document_field(doc, where);
  Shtuka S;
  S.tower = &k;
  const std::string o = doc.value("orientation", std::string("right"));
  if (o == "right") S.orientation = Orientation::right;
  else if (o == "left") S.orientation = Orientation::left;
  else throw SchemaError(where + ": \"orientation\" must be \"right\" or \"left\"");
  S.rank = need_int(doc, "rank", where);
  S.dim = need_int(doc, "dim", where);
  const Json& pole = need(doc, "pole", where);
  if (pole.is_string()) {
    if (pole.get<std::string>() != "inf") throw SchemaError(where + ": \"pole\" must be an element or \"inf\"");
  } else {
    S.pole = element_from_json(k, pole);
  }
  S.zero = element_from_json(k, need(doc, "zero", where));
  S.split_E = split_from_json(need(doc, "splits_E", where), where + ".splits_E");
  S.split_Eprime = split_from_json(need(doc, "splits_Eprime", where), where + ".splits_Eprime");
  S.J = matrix_from_json(k, need(doc, "J", where));
  S.T = matrix_from_json(k, need(doc, "T", where));
  S.var = doc.value("var", std::string("x"));
  return S;
}

Json shtuka_to_json(const Shtuka& S) {
  Json j;
  j["kind"] = "shtuka";
  j["field"] = field_to_json(S.field());
  j["orientation"] = S.orientation == Orientation::right ? "right" : "left";
  j["rank"] = S.rank;
  j["dim"] = S.dim;
  j["pole"] = S.pole ? element_to_json(*S.pole) : Json("inf");
  j["zero"] = element_to_json(S.zero);
  j["splits_E"] = S.split_E.degs;
  j["splits_Eprime"] = S.split_Eprime.degs;
  j["J"] = matrix_to_json(S.J);
  j["T"] = matrix_to_json(S.T);
  j["var"] = S.var;
  return j;
}

std::vector<Json> expand_documents(const Json& doc) {
  if (document_kind(doc) != "job") return {doc};
  std::vector<Json> out;
  for (const auto& m : need_array(need(doc, "members", "job"), "job.members")) {
    for (auto& x : expand_documents(m)) out.push_back(std::move(x));
  }
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace coefchange
