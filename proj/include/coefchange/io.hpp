#pragma once

#include <string>
#include <vector>

#include "coefchange/drinfeld.hpp"
#include "coefchange/sheaves.hpp"
#include "coefchange/shtuka.hpp"
#include "json.hpp"

namespace coefchange {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ParseError with line/column.
Json parse_json(const std::string& text, const std::string& source = "<input>");

/// {"p", "base_modulus" (default [0,1]), "ext_modulus" (default [0,1])}
const FieldTower& field_from_json(const Json& j);
Json field_to_json(const FieldTower& k);

/// int | digit array (degree-1 towers) | array of coordinates, each int or digit array.
FieldElement element_from_json(const FieldTower& k, const Json& j);
Json element_to_json(const FieldElement& a);

Poly poly_from_json(const FieldTower& k, const Json& j);
Json poly_to_json(const Poly& p);
SkewPoly skew_from_json(const FieldTower& k, const Json& j);
Json skew_to_json(const SkewPoly& p);
PolyMatrix matrix_from_json(const FieldTower& k, const Json& j);
Json matrix_to_json(const PolyMatrix& m);

/// Documents carry "kind" and (except possibly covers) "field".
DrinfeldModule module_from_json(const Json& doc);
Json module_to_json(const DrinfeldModule& m);
/// context supplies the constant field when the cover document has no "field".
CoverMap cover_from_json(const Json& doc, const FieldTower* context);
Json cover_to_json(const CoverMap& c);
AbelianSheafLadder ladder_from_json(const Json& doc);
Json ladder_to_json(const AbelianSheafLadder& L);
Shtuka shtuka_from_json(const Json& doc);
Json shtuka_to_json(const Shtuka& S);

/// A job document expands to its members; any other document to itself.
std::vector<Json> expand_documents(const Json& doc);
std::string document_kind(const Json& doc);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace coefchange
