#pragma once

#include "qgr/qtorus.hpp"

#include "json.hpp"

namespace qgr {

// Element encoding: a list of records
//   {"monomial": {"Y[i,p]": exponent, ...}, "coeff": {"k": c_k, ...}}
// where c_k is the integer coefficient of t^{k/2}. Keys are sorted; the
// encoding round-trips bit-exactly.
nlohmann::json element_to_json(const QTElement& x);
QTElement element_from_json(const nlohmann::json& j);

nlohmann::json monomial_to_json(const Monomial& m);
Monomial monomial_from_json(const nlohmann::json& j);

nlohmann::json classical_to_json(const Classical& x);
Classical classical_from_json(const nlohmann::json& j);

}  // namespace qgr
