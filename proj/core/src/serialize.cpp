#include "rmf/serialize.hpp"

#include "rmf/errors.hpp"

namespace rmf {

void to_json(json& j, const Rational& r) { j = r.str(); }

void from_json(const json& j, Rational& r) {
  if (j.is_number_integer()) {
    r = Rational(j.get<long>());
    return;
  }
  if (!j.is_string()) throw StructuralError("expected a rational string, got " + j.dump());
  r = Rational::parse(j.get<std::string>());
}

void to_json(json& j, const GaussianRational& z) { j = json{{"re", z.re()}, {"im", z.im()}}; }

void from_json(const json& j, GaussianRational& z) {
  if (j.is_string() || j.is_number_integer()) {
    z = GaussianRational(j.get<Rational>());
    return;
  }
  z = GaussianRational(j.at("re").get<Rational>(), j.value("im", json("0")).get<Rational>());
}

void to_json(json& j, const QSeries& s) {
  json coeffs = json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(c);
  j = json{{"truncation", s.truncation()}, {"prefactor", s.prefactor()}, {"coeffs", std::move(coeffs)}};
}

void from_json(const json& j, QSeries& s) {
  std::vector<GaussianRational> coeffs = j.at("coeffs").get<std::vector<GaussianRational>>();
  if (j.contains("truncation") && j.at("truncation").get<std::size_t>() != coeffs.size())
    throw StructuralError("QSeries JSON: truncation does not match coefficient count");
  s = QSeries(std::move(coeffs), j.value("prefactor", json("0")).get<Rational>());
}

void to_json(json& j, const EtaQuotientSpec& spec) {
  json terms = json::object();
  for (const auto& [delta, r] : spec.terms()) terms[std::to_string(delta)] = r;
  j = json{{"terms", std::move(terms)}};
}

void from_json(const json& j, EtaQuotientSpec& spec) {
  std::map<long, long> terms;
  for (const auto& [key, value] : j.at("terms").items()) terms[std::stol(key)] += value.get<long>();
  spec = EtaQuotientSpec(std::move(terms));
}

void to_json(json& j, const Check& c) { j = json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}}; }

void to_json(json& j, const LigozatReport& r) { j = json{{"cusp_form", r.cusp_form}, {"checks", r.checks}}; }

void to_json(json& j, const CuspConstantVector& v) {
  json constants = json::object();
  for (const auto& [c, value] : v.entries()) constants[std::to_string(c)] = value;
  j = json{{"p", v.p()}, {"parity", to_string(v.parity())}, {"constants", std::move(constants)}};
}

CuspConstantVector cusp_constants_from_json(const json& j) {
  const std::string parity = j.at("parity").get<std::string>();
  if (parity != "even" && parity != "odd") throw StructuralError("parity must be \"even\" or \"odd\"");
  CuspConstantVector v(j.at("p").get<long>(), parity == "even" ? Parity::Even : Parity::Odd);
  for (const auto& [key, value] : j.at("constants").items()) v.set(std::stol(key), value.get<GaussianRational>());
  return v;
}

void to_json(json& j, const EisensteinComponent& c) {
  j = json{{"p", c.p}, {"weight", c.weight}};
  if (c.kind == EisensteinComponent::Kind::Odd) {
    j["kind"] = "odd";
    j["a"] = c.a;
  } else {
    json b = json::object();
    for (const auto& [d, v] : c.b) b[std::to_string(d)] = v;
    j["kind"] = c.kind == EisensteinComponent::Kind::Even ? "even" : "weight2";
    j["b"] = std::move(b);
  }
}

void to_json(json& j, const FormulaReport& r) {
  j = json{{"parameters", {{"p", r.p}, {"k", r.k}, {"j", r.j}, {"terms", r.truncation}}},
           {"coefficients", {{"tau", r.weights.at_tau}, {"p_tau", r.weights.at_p_tau}}},
           {"theta_power", r.theta},
           {"main_terms", r.main_terms},
           {"residual", r.residual},
           {"alpha", r.alpha ? alpha_to_json(*r.alpha) : json(nullptr)},
           {"checks", r.checks},
           {"passed", r.passed()},
           {"first_offending_exponent",
            r.first_offending_exponent ? json(*r.first_offending_exponent) : json(nullptr)}};
}

json basis_listing(const CuspBasis& basis) {
  json out = json::array();
  for (std::size_t i = 0; i < basis.elements.size(); ++i) {
    const BasisElement& e = basis.elements[i];
    out.push_back(json{{"family", e.family},
                       {"params", {{"m", e.m}, {"l", e.l}, {"z_power", e.z_power}}},
                       {"ord_infinity", e.spec.order_at_infinity()},
                       {"spec", e.spec},
                       {"leading_exponent", e.leading_exponent},
                       {"ligozat", basis.ligozat[i]}});
  }
  return out;
}

json alpha_to_json(const std::vector<Rational>& alpha) {
  json out = json::array();
  for (const auto& a : alpha) out.push_back(a);
  return out;
}

}  // namespace rmf
