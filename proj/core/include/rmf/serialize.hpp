#ifndef RMF_SERIALIZE_HPP
#define RMF_SERIALIZE_HPP

// JSON forms of the library's value types. Rationals are strings "a/b" (or
// "a"), Gaussian rationals are {"re": ..., "im": ...}. Objects use nlohmann's
// default sorted keys, so output is byte-stable for equal inputs.

#include <vector>

#include <nlohmann/json.hpp>

#include "rmf/basis20.hpp"
#include "rmf/cusps.hpp"
#include "rmf/formula.hpp"
#include "rmf/oracle.hpp"

namespace rmf {

using json = nlohmann::json;

void to_json(json& j, const Rational& r);
void from_json(const json& j, Rational& r);
void to_json(json& j, const GaussianRational& z);
void from_json(const json& j, GaussianRational& z);
void to_json(json& j, const QSeries& s);
void from_json(const json& j, QSeries& s);
void to_json(json& j, const EtaQuotientSpec& spec);
void from_json(const json& j, EtaQuotientSpec& spec);
void to_json(json& j, const Check& c);
void to_json(json& j, const LigozatReport& r);
void to_json(json& j, const CuspConstantVector& v);
CuspConstantVector cusp_constants_from_json(const json& j);
void to_json(json& j, const EisensteinComponent& c);
void to_json(json& j, const FormulaReport& r);

/// [{family, params, ord_infinity, spec, leading_exponent, ligozat}] in basis order.
json basis_listing(const CuspBasis& basis);
json alpha_to_json(const std::vector<Rational>& alpha);

}  // namespace rmf

#endif  // RMF_SERIALIZE_HPP
